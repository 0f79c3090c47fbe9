#include <doctest.h>

#include <sstream>

#include "cmg/io.hpp"
#include "oracles/oracles.hpp"

using namespace cmg;

namespace {

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_graph(in, "t.mg");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("written graphs read back identically") {
  oracle::Rng rng(21);
  for (const auto& sig : {ColorSignature(1, 0), ColorSignature(0, 3), ColorSignature(2, 1)}) {
    for (int round = 0; round < 10; ++round) {
      const auto g = oracle::random_graph(sig, static_cast<Vertex>(rng() % 9), 50, rng);
      WriteOptions options;
      options.seed = 77;
      options.header_comments = {"round trip"};
      std::istringstream in(graph_to_string(g, options));
      const auto doc = parse_document(in);
      CHECK(doc.seed == 77U);
      const auto back = MixedGraph::from_draft(doc.draft);
      CHECK(back.same_relations(g));
    }
  }
}

TEST_CASE("the shipped directed 2-path parses") {
  const auto g = read_graph_file(std::string(CMG_DATA_DIR) + "/directed_2path.mg");
  CHECK(g.order() == 3);
  CHECK(g.relation_from(0, 1) == RelationKind::arc_out(1));
  CHECK(g.relation_from(2, 1) == RelationKind::arc_in(1));
}

TEST_CASE("structural and invariant errors carry the line") {
  CHECK(error_of("") .find("empty input") != std::string::npos);
  CHECK(error_of("mixedgraph 2\n").find("t.mg:1:") == 0);
  CHECK(error_of("mixedgraph 1\nsignature 1 0\nvertices 2\nx 0 1\n").find("t.mg:4: unknown directive") == 0);
  CHECK(error_of("mixedgraph 1\nsignature 1 0\nvertices 2\na 0 1\n").find("t.mg:4:") == 0);
  CHECK(error_of("mixedgraph 1\nsignature 1 0\nvertices 2\na 0 z 1\n").find("bad") != std::string::npos);
  const auto parallel = error_of("mixedgraph 1\nsignature 1 0\nvertices 2\na 0 1 1\n\na 1 0 1\n");
  CHECK(parallel.find("parallel relations") != std::string::npos);
  CHECK(parallel.find("line 6") != std::string::npos);
  CHECK(error_of("mixedgraph 1\nsignature 1 0\nvertices 2\ne 0 1 1\n").find("color out of range") !=
        std::string::npos);
  CHECK(error_of("mixedgraph 1\nsignature 1 0\nvertices 2\na 1 1 1\n").find("loop") != std::string::npos);
  CHECK(error_of("mixedgraph 1\nsignature 1 0\nvertices 2\na 0 2 1\n").find("vertex out of range") !=
        std::string::npos);
}

TEST_CASE("sidecar records in their own file or after the graph") {
  std::istringstream combined("mixedgraph 1\nsignature 0 2\nvertices 3\ne 0 1 1\ne 1 2 2\n"
                              "color 0 0\ncolor 1 1\ncolor 2 0\n"
                              "forest 0 1 0\nforest 2 1 0\n"
                              "map 0 5\nmap 1 4\nmap 2 5\n");
  const auto doc = parse_document(combined);
  CHECK(coloring_from_records(doc, 3) == std::vector<int>{0, 1, 0});
  CHECK(map_from_records(doc, 3) == std::vector<Vertex>{5, 4, 5});
  REQUIRE(doc.forests.size() == 2);
  CHECK(doc.forests[1].u == 2);

  std::istringstream side("# just colors\ncolor 1 3\ncolor 0 2\n");
  const auto only = parse_sidecar(side);
  CHECK(coloring_from_records(only, 2) == std::vector<int>{2, 3});
  CHECK_THROWS_AS(coloring_from_records(only, 3), InputError);

  std::istringstream twice("color 0 1\ncolor 0 2\n");
  CHECK_THROWS_AS(coloring_from_records(parse_sidecar(twice), 1), InputError);
  std::istringstream junk("colour 0 1\n");
  CHECK_THROWS_AS(parse_sidecar(junk), InputError);
}

TEST_CASE("writers emit the sidecar line formats") {
  std::ostringstream out;
  const std::vector<int> colors{1, 0};
  write_coloring(out, colors);
  const std::vector<Vertex> map{3, 4};
  write_map(out, map);
  const std::vector<ForestRecord> forests{{0, 1, 2}};
  write_forests(out, forests);
  CHECK(out.str() == "color 0 1\ncolor 1 0\nmap 0 3\nmap 1 4\nforest 0 1 2\n");

  MixedGraph g(ColorSignature(1, 0), 2);
  g.add_arc(1, 0, 1);
  const std::vector<std::string> roles{"first", "second"};
  WriteOptions options;
  options.vertex_annotations = roles;
  CHECK(graph_to_string(g, options) ==
        "mixedgraph 1\nsignature 1 0\nvertices 2\n# role 0 first\n# role 1 second\na 1 0 1\n");
}
