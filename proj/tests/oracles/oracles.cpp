#include "oracles/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace cmg::oracle {

namespace {

struct Edge {
  Vertex u;
  Vertex v;
};

std::vector<Edge> edges_of(const MixedGraph& g) {
  std::vector<Edge> out;
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (g.kind_index(u, v) >= 0) out.push_back({u, v});
    }
  }
  return out;
}

// Checks the partition restricted to vertices 0..upto-1.
bool valid_prefix(const MixedGraph& g, const std::vector<int>& labels, Vertex upto) {
  std::map<std::pair<int, int>, int> between;
  for (Vertex u = 0; u < upto; ++u) {
    for (Vertex v = 0; v < upto; ++v) {
      const int kind = g.kind_index(u, v);
      if (kind < 0) continue;
      const int a = labels[static_cast<std::size_t>(u)];
      const int b = labels[static_cast<std::size_t>(v)];
      if (a == b) return false;
      const auto [it, fresh] = between.try_emplace({a, b}, kind);
      if (!fresh && it->second != kind) return false;
    }
  }
  return true;
}

bool proper_prefix(const MixedGraph& g, const std::vector<int>& colors, Vertex upto) {
  for (Vertex u = 0; u < upto; ++u) {
    for (Vertex v = u + 1; v < upto; ++v) {
      if (g.kind_index(u, v) >= 0 && colors[static_cast<std::size_t>(u)] == colors[static_cast<std::size_t>(v)]) {
        return false;
      }
    }
  }
  return true;
}

// Restricted growth strings with at most k labels; `accept_prefix` prunes,
// `accept_full` decides.
bool search_labels(Vertex n, int k, std::vector<int>& labels, Vertex i, int used,
                   const std::function<bool(Vertex)>& accept_prefix,
                   const std::function<bool()>& accept_full) {
  if (i == n) return accept_full();
  for (int c = 0; c <= std::min(used, k - 1); ++c) {
    labels[static_cast<std::size_t>(i)] = c;
    if (!accept_prefix(i + 1)) continue;
    if (search_labels(n, k, labels, i + 1, std::max(used, c + 1), accept_prefix, accept_full)) {
      return true;
    }
  }
  return false;
}

bool forest_connected(const std::vector<std::vector<Vertex>>& adj, Vertex a, Vertex b) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<Vertex> stack{a};
  seen[static_cast<std::size_t>(a)] = true;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    if (x == b) return true;
    for (const Vertex y : adj[static_cast<std::size_t>(x)]) {
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  return false;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

} // namespace

bool endpoints_identifiable(const ColorSignature& sig, int kind_vu, int kind_vw) {
  MixedGraph path(sig, 3);
  path.add_relation_index(1, 0, kind_vu);
  path.add_relation_index(1, 2, kind_vw);
  for (int kind = -1; kind < sig.p(); ++kind) {
    MixedGraph target(sig, 2);
    if (kind >= 0) target.add_relation_index(0, 1, kind);
    for (Vertex a = 0; a < 2; ++a) {
      for (Vertex b = 0; b < 2; ++b) {
        if (is_homomorphism(path, target, {a, b, a})) return true;
      }
    }
  }
  return false;
}

bool is_homomorphism(const MixedGraph& g, const MixedGraph& h, const std::vector<Vertex>& map) {
  if (static_cast<Vertex>(map.size()) != g.order()) return false;
  for (const Vertex x : map) {
    if (x < 0 || x >= h.order()) return false;
  }
  for (const auto& e : edges_of(g)) {
    const Vertex a = map[static_cast<std::size_t>(e.u)];
    const Vertex b = map[static_cast<std::size_t>(e.v)];
    if (a == b || h.kind_index(a, b) != g.kind_index(e.u, e.v)) return false;
  }
  return true;
}

bool is_valid_partition(const MixedGraph& g, const std::vector<int>& labels) {
  return static_cast<Vertex>(labels.size()) == g.order() && valid_prefix(g, labels, g.order());
}

int chromatic_number(const MixedGraph& g) {
  const Vertex n = g.order();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= n; ++k) {
    if (search_labels(n, k, labels, 0, 0, [&](Vertex upto) { return valid_prefix(g, labels, upto); },
                      [] { return true; })) {
      return k;
    }
  }
  return 0;
}

std::optional<std::string> acyclic_violation(const MixedGraph& g, const std::vector<int>& colors) {
  const Vertex n = g.order();
  if (static_cast<Vertex>(colors.size()) != n) return "coloring has the wrong size";
  for (const auto& e : edges_of(g)) {
    if (colors[static_cast<std::size_t>(e.u)] == colors[static_cast<std::size_t>(e.v)]) {
      return "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " is monochromatic";
    }
  }
  const int palette = n == 0 ? 0 : 1 + *std::max_element(colors.begin(), colors.end());
  for (int a = 0; a < palette; ++a) {
    for (int b = a + 1; b < palette; ++b) {
      // Undirected cycle search in the subgraph induced by colors a and b.
      std::vector<int> parent(static_cast<std::size_t>(n), -2);
      for (Vertex root = 0; root < n; ++root) {
        const int c = colors[static_cast<std::size_t>(root)];
        if ((c != a && c != b) || parent[static_cast<std::size_t>(root)] != -2) continue;
        parent[static_cast<std::size_t>(root)] = -1;
        std::vector<Vertex> stack{root};
        while (!stack.empty()) {
          const Vertex x = stack.back();
          stack.pop_back();
          for (Vertex y = 0; y < n; ++y) {
            const int cy = colors[static_cast<std::size_t>(y)];
            if (g.kind_index(x, y) < 0 || (cy != a && cy != b)) continue;
            if (y == parent[static_cast<std::size_t>(x)]) continue;
            if (parent[static_cast<std::size_t>(y)] != -2) {
              return "colors " + std::to_string(a) + " and " + std::to_string(b) + " induce a cycle";
            }
            parent[static_cast<std::size_t>(y)] = x;
            stack.push_back(y);
          }
        }
      }
    }
  }
  return std::nullopt;
}

int acyclic_number(const MixedGraph& g) {
  const Vertex n = g.order();
  std::vector<int> colors(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= n; ++k) {
    if (search_labels(n, k, colors, 0, 0, [&](Vertex upto) { return proper_prefix(g, colors, upto); },
                      [&] { return !acyclic_violation(g, colors).has_value(); })) {
      return k;
    }
  }
  return 0;
}

std::optional<std::vector<int>> forest_partition(const MixedGraph& g, int k) {
  const auto edges = edges_of(g);
  const Vertex n = g.order();
  if (edges.empty()) return std::vector<int>{};
  if (k < 1) return std::nullopt;
  std::vector<std::vector<std::vector<Vertex>>> adj(
      static_cast<std::size_t>(k), std::vector<std::vector<Vertex>>(static_cast<std::size_t>(n)));
  std::vector<int> size(static_cast<std::size_t>(k), 0);
  std::vector<int> forest(edges.size(), -1);
  std::function<bool(std::size_t, int)> place = [&](std::size_t i, int used) {
    if (i == edges.size()) return true;
    std::int64_t room = 0;
    for (int f = 0; f < k; ++f) room += (n - 1) - size[static_cast<std::size_t>(f)];
    if (room < static_cast<std::int64_t>(edges.size() - i)) return false;
    const auto [u, v] = edges[i];
    for (int f = 0; f <= std::min(used, k - 1); ++f) {
      auto& a = adj[static_cast<std::size_t>(f)];
      if (forest_connected(a, u, v)) continue;
      a[static_cast<std::size_t>(u)].push_back(v);
      a[static_cast<std::size_t>(v)].push_back(u);
      ++size[static_cast<std::size_t>(f)];
      forest[i] = f;
      if (place(i + 1, std::max(used, f + 1))) return true;
      a[static_cast<std::size_t>(u)].pop_back();
      a[static_cast<std::size_t>(v)].pop_back();
      --size[static_cast<std::size_t>(f)];
    }
    return false;
  };
  if (place(0, 0)) return forest;
  return std::nullopt;
}

int arboricity(const MixedGraph& g, std::vector<int>* partition) {
  for (int k = 0;; ++k) {
    if (auto p = forest_partition(g, k)) {
      if (partition) *partition = std::move(*p);
      return k;
    }
  }
}

std::int64_t induced_edges(const MixedGraph& g, const std::vector<Vertex>& vertices) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.kind_index(vertices[i], vertices[j]) >= 0) ++count;
    }
  }
  return count;
}

int degeneracy(const MixedGraph& g) {
  const Vertex n = g.order();
  if (n > 20) throw std::invalid_argument("oracle degeneracy: order above 20");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges_of(g)) {
    adj[static_cast<std::size_t>(e.u)] |= 1U << static_cast<unsigned>(e.v);
    adj[static_cast<std::size_t>(e.v)] |= 1U << static_cast<unsigned>(e.u);
  }
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1U << static_cast<unsigned>(n)); ++mask) {
    int low = std::numeric_limits<int>::max();
    for (Vertex v = 0; v < n; ++v) {
      if (mask & (1U << static_cast<unsigned>(v))) {
        low = std::min(low, std::popcount(adj[static_cast<std::size_t>(v)] & mask));
      }
    }
    best = std::max(best, low);
  }
  return best;
}

std::int64_t common_neighbors(const MixedGraph& h, const std::vector<Vertex>& tuple,
                              const std::vector<int>& kinds) {
  std::int64_t count = 0;
  for (Vertex v = 0; v < h.order(); ++v) {
    bool ok = true;
    for (std::size_t i = 0; i < tuple.size() && ok; ++i) ok = h.kind_index(tuple[i], v) == kinds[i];
    if (ok) ++count;
  }
  return count;
}

bool has_property_q(const MixedGraph& h, int t, const std::vector<std::int64_t>& g) {
  const Vertex n = h.order();
  const int p = h.signature().p();
  std::vector<Vertex> tuple;
  std::vector<int> kinds;
  std::function<bool(int)> vectors = [&](int j) {
    if (static_cast<int>(kinds.size()) == j) {
      return common_neighbors(h, tuple, kinds) >= g[static_cast<std::size_t>(j)];
    }
    for (int a = 0; a < p; ++a) {
      kinds.push_back(a);
      const bool ok = vectors(j);
      kinds.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  std::function<bool(int)> tuples = [&](int j) {
    if (static_cast<int>(tuple.size()) == j) return vectors(j);
    for (Vertex v = 0; v < n; ++v) {
      if (std::find(tuple.begin(), tuple.end(), v) != tuple.end()) continue;
      tuple.push_back(v);
      const bool ok = tuples(j);
      tuple.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int j = 0; j <= t; ++j) {
    if (!tuples(j)) return false;
  }
  return true;
}

bool special_joined(const MixedGraph& g, Vertex a, Vertex b) {
  for (Vertex mid = 0; mid < g.order(); ++mid) {
    const int ka = g.kind_index(mid, a);
    const int kb = g.kind_index(mid, b);
    if (ka >= 0 && kb >= 0 && ka != kb) return true;
  }
  return false;
}

int ceil_log(std::uint64_t p, std::uint64_t x) {
  int s = 0;
  std::uint64_t power = 1;
  while (power < x) {
    power *= p;
    ++s;
  }
  return s;
}

std::int64_t ceil_log_plus_half(std::uint64_t p, std::uint64_t k) {
  const std::uint64_t square = k * k;
  std::uint64_t d = k % 2;
  std::uint64_t power = d == 1 ? p : 1;
  while (power < square) {
    power *= p * p;
    d += 2;
  }
  return static_cast<std::int64_t>((k + d) / 2);
}

int ceil_log_log(std::uint64_t p, std::uint64_t k, std::uint64_t b) {
  for (int s = -8;; ++s) {
    if (s >= 0) {
      const std::uint64_t e = saturating_pow(b, static_cast<std::uint64_t>(s), 1U << 20U);
      if (saturating_pow(p, e, k) >= k) return s;
    } else {
      const std::uint64_t e = saturating_pow(b, static_cast<std::uint64_t>(-s), 1U << 20U);
      if (saturating_pow(k, e, p) <= p) return s;
    }
  }
}

MixedGraph random_graph(const ColorSignature& sig, Vertex order, int percent, Rng& rng) {
  MixedGraph g(sig, order);
  const auto p = static_cast<std::uint64_t>(sig.p());
  for (Vertex u = 0; u < order; ++u) {
    for (Vertex v = u + 1; v < order; ++v) {
      if (static_cast<int>(rng() % 100) < percent) {
        g.add_relation_index(u, v, static_cast<int>(rng() % p));
      }
    }
  }
  return g;
}

MixedGraph random_sparse_graph(const ColorSignature& sig, Vertex order, int max_degree,
                               int max_degeneracy, int offers, Rng& rng) {
  MixedGraph g(sig, order);
  const auto p = static_cast<std::uint64_t>(sig.p());
  for (int i = 0; i < offers && order >= 2; ++i) {
    const auto u = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(order));
    const auto v = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(order));
    const int kind = static_cast<int>(rng() % p);
    if (u == v || g.adjacent(u, v)) continue;
    if (g.degree(u) >= max_degree || g.degree(v) >= max_degree) continue;
    g.add_relation_index(u, v, kind);
    if (degeneracy(g) > max_degeneracy) g.remove_relation(u, v);
  }
  return g;
}

} // namespace cmg::oracle
