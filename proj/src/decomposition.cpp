#include "cmg/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include <omp.h>

namespace cmg {
namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // False when x and y were already connected.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

// Path from `from` to `to` inside a forest given as adjacency lists.
std::vector<Vertex> forest_path(const std::vector<std::vector<Vertex>>& adj, Vertex from, Vertex to) {
  std::vector<Vertex> parent(adj.size(), -1);
  std::queue<Vertex> queue;
  parent[static_cast<std::size_t>(from)] = from;
  queue.push(from);
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    if (x == to) break;
    for (Vertex y : adj[static_cast<std::size_t>(x)]) {
      if (parent[static_cast<std::size_t>(y)] < 0) {
        parent[static_cast<std::size_t>(y)] = x;
        queue.push(y);
      }
    }
  }
  std::vector<Vertex> path;
  for (Vertex x = to; x != from; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

} // namespace

std::vector<UndirectedEdge> underlying_edges(const MixedGraph& graph) {
  std::vector<UndirectedEdge> out;
  out.reserve(graph.relation_count());
  for (Vertex u = 0; u < graph.order(); ++u) {
    for (Vertex v : graph.neighbors(u)) {
      if (v > u) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<ForestRecord> ForestDecomposition::records() const {
  std::vector<ForestRecord> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) out.push_back({edges[i].u, edges[i].v, forest_of[i]});
  return out;
}

std::optional<std::string> check_forest_decomposition(const MixedGraph& graph,
                                                      const ForestDecomposition& fd) {
  if (fd.edges != underlying_edges(graph)) {
    return std::string("decomposition does not list exactly the underlying edges");
  }
  if (fd.forest_of.size() != fd.edges.size()) return std::string("forest assignment is not total");
  for (int f : fd.forest_of) {
    if (f < 0 || f >= fd.forest_count) {
      return "forest index " + std::to_string(f) + " out of range";
    }
  }
  std::vector<UnionFind> forests(static_cast<std::size_t>(fd.forest_count),
                                 UnionFind(static_cast<std::size_t>(graph.order())));
  for (std::size_t i = 0; i < fd.edges.size(); ++i) {
    const auto& e = fd.edges[i];
    if (!forests[static_cast<std::size_t>(fd.forest_of[i])].unite(static_cast<std::size_t>(e.u),
                                                                  static_cast<std::size_t>(e.v))) {
      return "forest " + std::to_string(fd.forest_of[i]) + " has a cycle through edge (" +
             std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
    }
  }
  return std::nullopt;
}

ForestDecomposition decomposition_from_records(const MixedGraph& graph,
                                               const std::vector<ForestRecord>& records) {
  ForestDecomposition fd;
  fd.edges = underlying_edges(graph);
  fd.forest_of.assign(fd.edges.size(), -1);
  for (const auto& r : records) {
    const UndirectedEdge e{std::min(r.u, r.v), std::max(r.u, r.v)};
    auto it = std::lower_bound(fd.edges.begin(), fd.edges.end(), e);
    if (it == fd.edges.end() || *it != e) {
      throw InputError("forest record (" + std::to_string(r.u) + ", " + std::to_string(r.v) +
                       ") is not an edge of the graph");
    }
    auto& slot = fd.forest_of[static_cast<std::size_t>(it - fd.edges.begin())];
    if (slot >= 0) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") assigned twice");
    }
    if (r.forest < 0) throw InputError("negative forest index");
    slot = r.forest;
    fd.forest_count = std::max(fd.forest_count, r.forest + 1);
  }
  for (std::size_t i = 0; i < fd.edges.size(); ++i) {
    if (fd.forest_of[i] < 0) {
      throw InputError("edge (" + std::to_string(fd.edges[i].u) + ", " +
                       std::to_string(fd.edges[i].v) + ") has no forest");
    }
  }
  return fd;
}

// ---------------------------------------------------------------------------
// Nash-Williams density

namespace {

struct DensityCandidate {
  std::uint32_t mask = 0;
  std::int64_t edges = 0;
  std::int64_t vertices = 0;

  // Denser first, then smaller mask.
  bool better_than(const DensityCandidate& other) const {
    if (vertices < 2) return false;
    if (other.vertices < 2) return true;
    const std::int64_t lhs = edges * (other.vertices - 1);
    const std::int64_t rhs = other.edges * (vertices - 1);
    if (lhs != rhs) return lhs > rhs;
    return mask < other.mask;
  }
};

std::vector<std::uint32_t> adjacency_masks(const MixedGraph& graph) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(graph.order()), 0);
  for (Vertex u = 0; u < graph.order(); ++u) {
    for (Vertex v : graph.neighbors(u)) adj[static_cast<std::size_t>(u)] |= 1U << v;
  }
  return adj;
}

DensityCandidate evaluate(const std::vector<std::uint32_t>& adj, std::uint32_t mask) {
  DensityCandidate c;
  c.mask = mask;
  c.vertices = std::popcount(mask);
  std::int64_t twice = 0;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    twice += std::popcount(adj[static_cast<std::size_t>(std::countr_zero(rest))] & mask);
  }
  c.edges = twice / 2;
  return c;
}

ArboricityWitness to_witness(const DensityCandidate& best) {
  ArboricityWitness w;
  if (best.vertices < 2 || best.edges == 0) return w;
  w.arboricity = static_cast<int>((best.edges + best.vertices - 2) / (best.vertices - 1));
  w.edges = best.edges;
  for (std::uint32_t rest = best.mask; rest != 0; rest &= rest - 1) {
    w.subgraph.push_back(static_cast<Vertex>(std::countr_zero(rest)));
  }
  return w;
}

bool nash_williams_available(const MixedGraph& graph, int subset_limit) {
  return graph.order() <= std::min(subset_limit, 31);
}

} // namespace

std::optional<ArboricityWitness> nash_williams_density_serial(const MixedGraph& graph,
                                                              int subset_limit) {
  if (!nash_williams_available(graph, subset_limit)) return std::nullopt;
  const auto adj = adjacency_masks(graph);
  const std::uint64_t total = std::uint64_t{1} << graph.order();
  DensityCandidate best;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const auto c = evaluate(adj, static_cast<std::uint32_t>(mask));
    if (c.better_than(best)) best = c;
  }
  return to_witness(best);
}

std::optional<ArboricityWitness> nash_williams_density(const MixedGraph& graph, int subset_limit) {
  if (!nash_williams_available(graph, subset_limit)) return std::nullopt;
  const auto adj = adjacency_masks(graph);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << graph.order());
  DensityCandidate best;
#pragma omp parallel
  {
    DensityCandidate local;
#pragma omp for schedule(static) nowait
    for (std::int64_t mask = 1; mask < total; ++mask) {
      const auto c = evaluate(adj, static_cast<std::uint32_t>(mask));
      if (c.better_than(local)) local = c;
    }
#pragma omp critical(cmg_nash_williams)
    {
      if (local.better_than(best)) best = local;
    }
  }
  return to_witness(best);
}

// ---------------------------------------------------------------------------
// Greedy forests

ForestDecomposition greedy_forests(const MixedGraph& graph) {
  ForestDecomposition fd;
  fd.edges = underlying_edges(graph);
  fd.forest_of.assign(fd.edges.size(), -1);
  const auto n = static_cast<std::size_t>(graph.order());

  auto edge_index = [&](Vertex a, Vertex b) {
    const UndirectedEdge e{std::min(a, b), std::max(a, b)};
    return static_cast<std::size_t>(std::lower_bound(fd.edges.begin(), fd.edges.end(), e) -
                                    fd.edges.begin());
  };

  std::size_t remaining = fd.edges.size();
  while (remaining > 0) {
    const int forest = fd.forest_count++;
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> cursor(n, 0);
    for (Vertex root = 0; root < graph.order(); ++root) {
      if (visited[static_cast<std::size_t>(root)]) continue;
      visited[static_cast<std::size_t>(root)] = true;
      std::vector<Vertex> stack{root};
      while (!stack.empty()) {
        const Vertex x = stack.back();
        auto nbrs = graph.neighbors(x);
        auto& at = cursor[static_cast<std::size_t>(x)];
        bool descended = false;
        while (at < nbrs.size()) {
          const Vertex y = nbrs[at++];
          if (visited[static_cast<std::size_t>(y)]) continue;
          const auto idx = edge_index(x, y);
          if (fd.forest_of[idx] >= 0) continue;
          fd.forest_of[idx] = forest;
          --remaining;
          visited[static_cast<std::size_t>(y)] = true;
          stack.push_back(y);
          descended = true;
          break;
        }
        if (!descended) stack.pop_back();
      }
    }
  }
  return fd;
}

// ---------------------------------------------------------------------------
// Acyclic colorings

std::string to_string(const AcyclicViolation& v) {
  std::ostringstream os;
  switch (v.kind) {
  case AcyclicViolation::Kind::NotTotal: os << "coloring is not total"; break;
  case AcyclicViolation::Kind::MonochromaticEdge: os << "monochromatic edge"; break;
  case AcyclicViolation::Kind::BichromaticCycle: os << "bichromatic cycle"; break;
  }
  for (std::size_t i = 0; i < v.witness.size(); ++i) os << (i == 0 ? ": " : " ") << v.witness[i];
  return os.str();
}

std::optional<AcyclicViolation> check_acyclic_coloring(const MixedGraph& graph,
                                                       std::span<const int> colors) {
  if (colors.size() != static_cast<std::size_t>(graph.order())) {
    return AcyclicViolation{AcyclicViolation::Kind::NotTotal, {}};
  }
  struct Tagged {
    int low;
    int high;
    UndirectedEdge edge;
  };
  std::vector<Tagged> tagged;
  for (const auto& e : underlying_edges(graph)) {
    const int a = colors[static_cast<std::size_t>(e.u)];
    const int b = colors[static_cast<std::size_t>(e.v)];
    if (a == b) return AcyclicViolation{AcyclicViolation::Kind::MonochromaticEdge, {e.u, e.v}};
    tagged.push_back({std::min(a, b), std::max(a, b), e});
  }
  std::stable_sort(tagged.begin(), tagged.end(), [](const Tagged& x, const Tagged& y) {
    return std::tie(x.low, x.high) < std::tie(y.low, y.high);
  });
  const auto n = static_cast<std::size_t>(graph.order());
  std::size_t begin = 0;
  while (begin < tagged.size()) {
    std::size_t end = begin;
    while (end < tagged.size() && tagged[end].low == tagged[begin].low &&
           tagged[end].high == tagged[begin].high) {
      ++end;
    }
    UnionFind uf(n);
    std::vector<std::vector<Vertex>> forest(n);
    for (std::size_t i = begin; i < end; ++i) {
      const auto& e = tagged[i].edge;
      if (!uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
        return AcyclicViolation{AcyclicViolation::Kind::BichromaticCycle,
                                forest_path(forest, e.u, e.v)};
      }
      forest[static_cast<std::size_t>(e.u)].push_back(e.v);
      forest[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    begin = end;
  }
  return std::nullopt;
}

namespace {

class AcyclicSearch {
public:
  AcyclicSearch(const MixedGraph& g, std::uint64_t budget)
      : g_(g), n_(static_cast<std::size_t>(g.order())), budget_(budget), color_(n_, -1) {
    order_ = degeneracy_ordering(g).order;
  }

  void run(int lower) {
    lower_ = lower;
    best_ = static_cast<int>(n_);
    best_colors_.resize(n_);
    std::iota(best_colors_.begin(), best_colors_.end(), 0);
    search(0);
  }

  int best() const noexcept { return best_; }
  const std::vector<int>& best_colors() const noexcept { return best_colors_; }
  bool out_of_budget() const noexcept { return out_of_budget_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

private:
  // Would coloring v with c close a cycle in some two-colored subgraph?
  bool admissible(Vertex v, int c) const {
    std::vector<int> other_colors;
    for (Vertex u : g_.neighbors(v)) {
      const int d = color_[static_cast<std::size_t>(u)];
      if (d < 0) continue;
      if (d == c) return false;
      if (std::find(other_colors.begin(), other_colors.end(), d) == other_colors.end()) {
        other_colors.push_back(d);
      }
    }
    for (int d : other_colors) {
      // v joins every d-colored neighbor; a cycle appears iff two of them
      // already share a component of the {c, d} subgraph.
      UnionFind uf(n_);
      for (Vertex x = 0; x < static_cast<Vertex>(n_); ++x) {
        const int cx = color_[static_cast<std::size_t>(x)];
        if (cx != c && cx != d) continue;
        for (Vertex y : g_.neighbors(x)) {
          const int cy = color_[static_cast<std::size_t>(y)];
          if (y > x && (cy == c || cy == d) && cy != cx) {
            uf.unite(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
          }
        }
      }
      std::vector<std::size_t> roots;
      for (Vertex u : g_.neighbors(v)) {
        if (color_[static_cast<std::size_t>(u)] != d) continue;
        const auto r = uf.find(static_cast<std::size_t>(u));
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) return false;
        roots.push_back(r);
      }
    }
    return true;
  }

  // True when the search should stop.
  bool search(std::size_t depth) {
    if (depth == n_) {
      best_ = used_;
      best_colors_ = color_;
      return best_ <= lower_;
    }
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return true;
    }
    const Vertex v = order_[depth];
    for (int c = 0; c < used_; ++c) {
      if (!admissible(v, c)) continue;
      color_[static_cast<std::size_t>(v)] = c;
      const bool stop = search(depth + 1);
      color_[static_cast<std::size_t>(v)] = -1;
      if (stop) return true;
      if (used_ >= best_) return false;
    }
    if (used_ + 1 < best_) {
      color_[static_cast<std::size_t>(v)] = used_++;
      const bool stop = search(depth + 1);
      --used_;
      color_[static_cast<std::size_t>(v)] = -1;
      if (stop) return true;
    }
    return false;
  }

  const MixedGraph& g_;
  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  int lower_ = 0;
  int best_ = 0;
  int used_ = 0;
  std::vector<Vertex> order_;
  std::vector<int> color_;
  std::vector<int> best_colors_;
};

} // namespace

AcyclicResult acyclic_chromatic_number(const MixedGraph& graph, std::uint64_t node_budget) {
  AcyclicResult result;
  if (graph.order() == 0) return result;
  int lower = 1;
  if (graph.relation_count() > 0) ++lower;
  UnionFind uf(static_cast<std::size_t>(graph.order()));
  for (const auto& e : underlying_edges(graph)) {
    if (!uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
      ++lower; // a cycle needs three colors
      break;
    }
  }
  AcyclicSearch search(graph, node_budget);
  search.run(lower);
  result.nodes = search.nodes();
  result.upper = search.best();
  result.witness.colors = search.best_colors();
  result.witness.palette = search.best();
  if (search.out_of_budget()) {
    result.status = SearchStatus::UnknownInBudget;
    result.lower = lower;
  } else {
    result.lower = result.upper;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Digit layers

DigitLayers digit_graphs(const MixedGraph& graph, const ForestDecomposition& fd,
                         const ColorSignature& sig, std::vector<Vertex> vertex_order) {
  sig.require_nontrivial("digit_graphs");
  if (auto problem = check_forest_decomposition(graph, fd)) {
    throw InputError("digit_graphs: " + *problem);
  }
  const Vertex n = graph.order();
  if (vertex_order.empty()) vertex_order = degeneracy_ordering(graph).order;
  if (vertex_order.size() != static_cast<std::size_t>(n)) {
    throw InputError("digit_graphs: vertex order must list every vertex");
  }
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < vertex_order.size(); ++i) {
    const Vertex v = vertex_order[i];
    graph.check_vertex(v);
    if (position[static_cast<std::size_t>(v)] >= 0) {
      throw InputError("digit_graphs: vertex order repeats " + std::to_string(v));
    }
    position[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }

  const int p = sig.p();
  DigitLayers out;
  out.vertex_order = std::move(vertex_order);
  out.digits = fd.forest_count <= 1
                   ? 0
                   : ceil_log(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(fd.forest_count));
  for (int l = 0; l <= out.digits; ++l) {
    MixedGraph layer(sig, n);
    for (std::size_t i = 0; i < fd.edges.size(); ++i) {
      Vertex a = fd.edges[i].u;
      Vertex b = fd.edges[i].v;
      if (position[static_cast<std::size_t>(a)] > position[static_cast<std::size_t>(b)]) std::swap(a, b);
      int kind = 0;
      if (l > 0) {
        int rest = fd.forest_of[i];
        for (int skip = out.digits - l; skip > 0; --skip) rest /= p;
        kind = rest % p;
      }
      layer.add_relation_index(a, b, kind);
    }
    out.layers.push_back(std::move(layer));
  }
  return out;
}

PipelineResult acyclic_from_homomorphisms(const MixedGraph& graph, const ForestDecomposition& fd,
                                          const ColorSignature& sig, std::uint64_t hom_budget) {
  PipelineResult result;
  result.layers = digit_graphs(graph, fd, sig);
  const auto count = static_cast<std::int64_t>(result.layers.layers.size());
  std::vector<ChromaticResult> solved(static_cast<std::size_t>(count));
  ChromaticOptions options;
  options.node_budget = hom_budget;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t l = 0; l < count; ++l) {
    solved[static_cast<std::size_t>(l)] =
        chromatic_number(result.layers.layers[static_cast<std::size_t>(l)], options);
  }

  for (auto& s : solved) {
    if (!s.exact()) result.status = SearchStatus::UnknownInBudget;
    result.layer_chi.push_back(s.upper);
    result.k = std::max(result.k, s.upper);
    result.layer_partitions.push_back(std::move(s.witness));
  }

  // Any homomorphisms would do; the product of their block indices is acyclic.
  std::map<std::vector<int>, int> ids;
  result.coloring.colors.resize(static_cast<std::size_t>(graph.order()));
  for (Vertex v = 0; v < graph.order(); ++v) {
    std::vector<int> tuple;
    tuple.reserve(result.layer_partitions.size());
    for (const auto& part : result.layer_partitions) {
      tuple.push_back(part.block_of[static_cast<std::size_t>(v)]);
    }
    auto [it, inserted] = ids.emplace(std::move(tuple), static_cast<int>(ids.size()));
    result.coloring.colors[static_cast<std::size_t>(v)] = it->second;
  }
  result.coloring.palette = static_cast<int>(ids.size());
  result.palette_bound =
      int_pow(BigInt(result.k), static_cast<std::uint64_t>(result.layers.digits) + 1);
  return result;
}

} // namespace cmg
