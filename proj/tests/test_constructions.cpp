#include <doctest.h>

#include <algorithm>
#include <set>

#include "cmg/bounds.hpp"
#include "cmg/constructions.hpp"
#include "cmg/solver.hpp"
#include "oracles/oracles.hpp"

using namespace cmg;

TEST_CASE("H_k layout and relation labels") {
  for (const auto& [sig, k] : {std::pair{ColorSignature(1, 0), 3}, std::pair{ColorSignature(0, 2), 3},
                               std::pair{ColorSignature(1, 1), 3}, std::pair{ColorSignature(1, 0), 4}}) {
    const auto h = build_hk(sig, k);
    const int p = sig.p();
    int vectors = 1;
    for (int i = 0; i < k - 1; ++i) vectors *= p;
    const int expected = k * (k - 1) + k * vectors + k * (k - 1) / 2 * vectors * vectors;
    CHECK(h.graph.order() == expected);
    CHECK(h.tops().size() == static_cast<std::size_t>(k * vectors));
    CHECK(h.annotations().size() == static_cast<std::size_t>(expected));
    CHECK_FALSE(validate(h.graph).has_value());

    std::set<std::pair<int, std::vector<int>>> distinct;
    for (const Vertex t : h.tops()) {
      const auto& role = h.roles[static_cast<std::size_t>(t)];
      distinct.insert({role.group, role.vector});
      // The bottoms of the top's group see it through its vector.
      for (Vertex b = 0; b < h.graph.order(); ++b) {
        const auto& br = h.roles[static_cast<std::size_t>(b)];
        if (br.kind != HkRole::Kind::Bottom || br.group != role.group) continue;
        CHECK(h.graph.kind_index(b, t) == role.vector[static_cast<std::size_t>(br.index - 1)]);
      }
    }
    CHECK(distinct.size() == h.tops().size());
    for (Vertex v = 0; v < h.graph.order(); ++v) {
      const auto& r = h.roles[static_cast<std::size_t>(v)];
      if (r.kind == HkRole::Kind::Internal) {
        CHECK(h.graph.degree(v) == 2);
        CHECK(is_special_2path(h.graph, r.left, v, r.right));
      }
    }
  }
}

TEST_CASE("H_k top vectors run in lexicographic order, first coordinate most significant") {
  const auto h = build_hk(ColorSignature(1, 0), 3);
  const auto tops = h.tops();
  CHECK(h.roles[static_cast<std::size_t>(tops[0])].vector == std::vector<int>{0, 0});
  CHECK(h.roles[static_cast<std::size_t>(tops[1])].vector == std::vector<int>{0, 1});
  CHECK(h.roles[static_cast<std::size_t>(tops[2])].vector == std::vector<int>{1, 0});
  CHECK(to_string(h.roles[static_cast<std::size_t>(tops[1])], h.graph.signature()) == "top(1,out1,in1)");
  CHECK(h.annotations()[0] == "bottom(1,1)");
}

TEST_CASE("all tops of H_k are pairwise joined by special 2-paths") {
  for (const auto& [sig, k] : {std::pair{ColorSignature(1, 0), 3}, std::pair{ColorSignature(0, 3), 3},
                               std::pair{ColorSignature(1, 0), 4}}) {
    const auto h = build_hk(sig, k);
    const auto tops = h.tops();
    for (std::size_t i = 0; i < tops.size(); ++i) {
      for (std::size_t j = i + 1; j < tops.size(); ++j) {
        CHECK(oracle::special_joined(h.graph, tops[i], tops[j]));
      }
    }
    const auto clique = special_clique(h.graph);
    CHECK(BigInt(clique.size()) >= nr_upper(k, sig.p()));
  }
}

TEST_CASE("H_k has a k-color acyclic coloring") {
  for (const auto& [sig, k] : {std::pair{ColorSignature(1, 0), 3}, std::pair{ColorSignature(0, 2), 3},
                               std::pair{ColorSignature(2, 0), 3}, std::pair{ColorSignature(1, 0), 4}}) {
    const auto h = build_hk(sig, k);
    const auto colors = hk_acyclic_coloring(h);
    CHECK(*std::max_element(colors.begin(), colors.end()) == k - 1);
    CHECK(*std::min_element(colors.begin(), colors.end()) == 0);
    CHECK_FALSE(oracle::acyclic_violation(h.graph, colors).has_value());
  }
}

TEST_CASE("H_k input checks") {
  CHECK_THROWS_AS(build_hk(ColorSignature(1, 0), 2), InputError);
  CHECK_THROWS_AS(build_hk(ColorSignature(0, 1), 3), InputError);
  CHECK_THROWS_AS(build_hk(ColorSignature(3, 0), 9), InputError);
}

TEST_CASE("special gadget: subdivided clique with special middles") {
  for (const auto& sig : {ColorSignature(1, 0), ColorSignature(0, 2), ColorSignature(1, 1)}) {
    const int t = 5;
    const auto g = build_special_gadget(sig, t);
    CHECK(g.order() == t + t * (t - 1) / 2);
    CHECK(g.relation_count() == static_cast<std::size_t>(t * (t - 1)));
    for (Vertex a = 0; a < t; ++a) {
      CHECK(g.degree(a) == t - 1);
      for (Vertex b = a + 1; b < t; ++b) CHECK(oracle::special_joined(g, a, b));
    }
    const auto result = chromatic_number(g);
    REQUIRE(result.exact());
    CHECK(result.value() >= t);
  }
  CHECK_THROWS_AS(build_special_gadget(ColorSignature(0, 1), 3), InputError);
  CHECK_THROWS_AS(build_special_gadget(ColorSignature(1, 0), 1), InputError);
}
