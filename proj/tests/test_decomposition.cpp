#include <doctest.h>

#include <algorithm>

#include "cmg/decomposition.hpp"
#include "oracles/oracles.hpp"

using namespace cmg;

namespace {

MixedGraph undirected(Vertex n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  MixedGraph g(ColorSignature(0, 1), n);
  for (const auto& [u, v] : edges) g.add_edge(u, v, 1);
  return g;
}

MixedGraph complete(Vertex n) {
  MixedGraph g(ColorSignature(0, 1), n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v, 1);
  }
  return g;
}

} // namespace

TEST_CASE("forest decompositions are checked edge by edge") {
  const auto triangle = undirected(3, {{0, 1}, {1, 2}, {0, 2}});
  auto fd = decomposition_from_records(triangle, {{0, 1, 0}, {2, 1, 0}, {0, 2, 1}});
  CHECK(fd.forest_count == 2);
  CHECK_FALSE(check_forest_decomposition(triangle, fd).has_value());
  fd = decomposition_from_records(triangle, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}});
  const auto bad = check_forest_decomposition(triangle, fd);
  REQUIRE(bad.has_value());
  CHECK(bad->find("cycle") != std::string::npos);
  CHECK_THROWS_AS(decomposition_from_records(triangle, {{0, 1, 0}}), InputError);
  CHECK_THROWS_AS(decomposition_from_records(triangle, {{0, 1, 0}, {1, 0, 1}, {0, 2, 0}, {1, 2, 0}}),
                  InputError);
  CHECK_THROWS_AS(decomposition_from_records(undirected(3, {{0, 1}}), {{0, 2, 0}}), InputError);
}

TEST_CASE("greedy forests on small named graphs") {
  CHECK(greedy_forests(complete(4)).forest_count == 2);
  CHECK(greedy_forests(undirected(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})).forest_count == 2);
  CHECK(greedy_forests(undirected(5, {{0, 1}, {0, 2}, {2, 3}, {2, 4}})).forest_count == 1);
  CHECK(greedy_forests(undirected(3, {})).forest_count == 0);
}

TEST_CASE("density search: parallel equals serial, equals exhaustive forest partition") {
  oracle::Rng rng(41);
  for (int round = 0; round < 60; ++round) {
    const auto order = static_cast<Vertex>(1 + rng() % 12);
    const auto g = oracle::random_graph(ColorSignature(1, 0), order, static_cast<int>(rng() % 100), rng);
    const auto parallel = nash_williams_density(g);
    const auto serial = nash_williams_density_serial(g);
    REQUIRE(parallel.has_value());
    REQUIRE(serial.has_value());
    CHECK(parallel->arboricity == serial->arboricity);
    CHECK(parallel->subgraph == serial->subgraph);
    CHECK(parallel->edges == serial->edges);
    CHECK(oracle::induced_edges(g, parallel->subgraph) == parallel->edges);
    const auto fd = greedy_forests(g);
    CHECK_FALSE(check_forest_decomposition(g, fd).has_value());
    CHECK(fd.forest_count >= parallel->arboricity);
    if (order <= 8) CHECK(parallel->arboricity == oracle::arboricity(g));
  }
  oracle::Rng big(42);
  const auto g = oracle::random_graph(ColorSignature(1, 0), 22, 30, big);
  CHECK_FALSE(nash_williams_density(g).has_value());
  CHECK(nash_williams_density(g, 22).has_value());
}

TEST_CASE("acyclic coloring checker") {
  const auto c4 = undirected(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  auto bad = check_acyclic_coloring(c4, std::vector<int>{0, 1, 0, 1});
  REQUIRE(bad.has_value());
  CHECK(bad->kind == AcyclicViolation::Kind::BichromaticCycle);
  CHECK(bad->witness.size() == 4);
  for (std::size_t i = 0; i < bad->witness.size(); ++i) {
    CHECK(c4.adjacent(bad->witness[i], bad->witness[(i + 1) % bad->witness.size()]));
  }
  bad = check_acyclic_coloring(c4, std::vector<int>{0, 0, 1, 2});
  REQUIRE(bad.has_value());
  CHECK(bad->kind == AcyclicViolation::Kind::MonochromaticEdge);
  CHECK(check_acyclic_coloring(c4, std::vector<int>{0, 1})->kind == AcyclicViolation::Kind::NotTotal);
  CHECK_FALSE(check_acyclic_coloring(c4, std::vector<int>{0, 1, 0, 2}).has_value());

  oracle::Rng rng(43);
  for (int round = 0; round < 300; ++round) {
    const auto g = oracle::random_graph(ColorSignature(0, 2), 7, 45, rng);
    std::vector<int> colors(7);
    for (auto& c : colors) c = static_cast<int>(rng() % 4);
    const auto mine = check_acyclic_coloring(g, colors);
    CHECK(mine.has_value() == oracle::acyclic_violation(g, colors).has_value());
    if (mine && mine->kind == AcyclicViolation::Kind::BichromaticCycle) {
      std::vector<int> seen;
      for (const Vertex v : mine->witness) seen.push_back(colors[static_cast<std::size_t>(v)]);
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      CHECK(seen.size() == 2);
    }
  }
}

TEST_CASE("exact acyclic chromatic number agrees with enumeration") {
  oracle::Rng rng(44);
  for (int round = 0; round < 80; ++round) {
    const auto g = oracle::random_graph(ColorSignature(1, 0), static_cast<Vertex>(1 + rng() % 8),
                                        static_cast<int>(rng() % 100), rng);
    const auto result = acyclic_chromatic_number(g);
    REQUIRE(result.exact());
    CHECK(result.upper == oracle::acyclic_number(g));
    CHECK_FALSE(oracle::acyclic_violation(g, result.witness.colors).has_value());
  }
  CHECK(acyclic_chromatic_number(complete(5)).upper == 5);
  CHECK(acyclic_chromatic_number(undirected(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})).upper == 3);
}

TEST_CASE("digit layers write the forest index in base p, leading digit first") {
  // A star with five edges put in forests 0..4 by hand (a star splits freely).
  MixedGraph star(ColorSignature(1, 0), 6);
  for (Vertex v = 1; v <= 5; ++v) star.add_arc(0, v, 1);
  const auto fd = decomposition_from_records(star, {{0, 1, 0}, {0, 2, 1}, {0, 3, 2}, {0, 4, 3}, {0, 5, 4}});
  const ColorSignature sig(1, 0);
  const std::vector<Vertex> order{0, 1, 2, 3, 4, 5};
  const auto layers = digit_graphs(star, fd, sig, order);
  CHECK(layers.digits == 3);
  REQUIRE(layers.layers.size() == 4);
  for (Vertex v = 1; v <= 5; ++v) {
    const int forest = v - 1;
    CHECK(layers.layers[0].kind_index(0, v) == 0);
    CHECK(layers.layers[1].kind_index(0, v) == (forest >> 2) % 2);
    CHECK(layers.layers[2].kind_index(0, v) == (forest >> 1) % 2);
    CHECK(layers.layers[3].kind_index(0, v) == forest % 2);
  }
  // Forest 2 with two digits is (1, 0).
  const auto two = decomposition_from_records(star, {{0, 1, 0}, {0, 2, 1}, {0, 3, 2}, {0, 4, 2}, {0, 5, 0}});
  const auto l2 = digit_graphs(star, two, sig, order);
  CHECK(l2.digits == 2);
  CHECK(l2.layers[1].kind_index(0, 3) == 1);
  CHECK(l2.layers[2].kind_index(0, 3) == 0);
  // Viewing from the later endpoint flips the arc.
  const std::vector<Vertex> reversed{5, 4, 3, 2, 1, 0};
  CHECK(digit_graphs(star, two, sig, reversed).layers[1].kind_index(3, 0) == 1);
  CHECK_THROWS_AS(digit_graphs(star, two, sig, {0, 1}), InputError);
}

TEST_CASE("digit layers share the underlying graph and use every forest's digits") {
  oracle::Rng rng(45);
  for (int round = 0; round < 20; ++round) {
    const auto g = oracle::random_graph(ColorSignature(1, 0), 9, 60, rng);
    const auto fd = greedy_forests(g);
    for (const auto& sig : {ColorSignature(1, 0), ColorSignature(0, 3)}) {
      const auto layers = digit_graphs(g, fd, sig);
      CHECK(layers.digits == (fd.forest_count <= 1 ? 0 : oracle::ceil_log(static_cast<std::uint64_t>(sig.p()),
                                                                           static_cast<std::uint64_t>(fd.forest_count))));
      for (const auto& layer : layers.layers) {
        CHECK(underlying_edges(layer) == underlying_edges(g));
      }
    }
  }
}

TEST_CASE("pipeline colorings are acyclic and within the palette bound") {
  oracle::Rng rng(46);
  for (int round = 0; round < 40; ++round) {
    const auto g = oracle::random_graph(ColorSignature(1, 0), static_cast<Vertex>(2 + rng() % 9),
                                        static_cast<int>(10 + rng() % 90), rng);
    const auto fd = greedy_forests(g);
    for (const auto& sig : {ColorSignature(1, 0), ColorSignature(0, 2), ColorSignature(1, 1)}) {
      const auto result = acyclic_from_homomorphisms(g, fd, sig);
      REQUIRE(result.status == SearchStatus::Exact);
      CHECK_FALSE(oracle::acyclic_violation(g, result.coloring.colors).has_value());
      CHECK(BigInt(result.coloring.palette) <= result.palette_bound);
      CHECK(result.layer_chi.size() == result.layers.layers.size());
      CHECK(result.k == *std::max_element(result.layer_chi.begin(), result.layer_chi.end()));
      for (std::size_t l = 0; l < result.layer_partitions.size(); ++l) {
        CHECK(oracle::is_valid_partition(result.layers.layers[l], result.layer_partitions[l].block_of));
      }
    }
  }
}
