#include "cmg/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace cmg {

ColorSignature::ColorSignature(int arc_colors, int edge_colors)
    : m_(arc_colors), n_(edge_colors) {
  if (m_ < 0 || n_ < 0) {
    throw InputError("signature: color counts must be non-negative");
  }
  if (2 * m_ + n_ < 1) {
    throw InputError("signature: need 2m+n >= 1");
  }
  if (2 * m_ + n_ > std::numeric_limits<std::int16_t>::max()) {
    throw InputError("signature: too many colors");
  }
}

void ColorSignature::require_nontrivial(const char* what) const {
  if (p() < 2) {
    throw InputError(std::string(what) + ": requires (m,n) != (0,1), i.e. 2m+n >= 2");
  }
}

std::string to_string(const ColorSignature& sig) {
  std::ostringstream os;
  os << "(" << sig.arc_colors() << "," << sig.edge_colors() << ")";
  return os.str();
}

RelationKind RelationKind::from_index(const ColorSignature& sig, int index) {
  const int m = sig.arc_colors();
  if (index < 0 || index >= sig.p()) {
    throw InputError("relation kind index " + std::to_string(index) + " out of range for p=" +
                     std::to_string(sig.p()));
  }
  if (index < m) return arc_out(index + 1);
  if (index < 2 * m) return arc_in(index - m + 1);
  return edge(index - 2 * m + 1);
}

int RelationKind::index(const ColorSignature& sig) const {
  if (!valid_for(sig)) {
    throw InputError("relation kind " + to_string(*this) + " not valid for signature " +
                     to_string(sig));
  }
  const int m = sig.arc_colors();
  switch (type) {
  case RelationType::ArcOut: return color - 1;
  case RelationType::ArcIn: return m + color - 1;
  case RelationType::Edge: return 2 * m + color - 1;
  }
  return -1;
}

bool RelationKind::valid_for(const ColorSignature& sig) const noexcept {
  if (color < 1) return false;
  if (type == RelationType::Edge) return color <= sig.edge_colors();
  return color <= sig.arc_colors();
}

RelationKind RelationKind::dual() const noexcept {
  switch (type) {
  case RelationType::ArcOut: return arc_in(color);
  case RelationType::ArcIn: return arc_out(color);
  case RelationType::Edge: break;
  }
  return *this;
}

std::string to_string(const RelationKind& kind) {
  switch (kind.type) {
  case RelationType::ArcOut: return "out" + std::to_string(kind.color);
  case RelationType::ArcIn: return "in" + std::to_string(kind.color);
  case RelationType::Edge: return "edge" + std::to_string(kind.color);
  }
  return "?";
}

RelationKind parse_relation_kind(const std::string& token) {
  auto parse_color = [&](std::size_t prefix) {
    const std::string digits = token.substr(prefix);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("bad relation kind '" + token + "'");
    }
    return std::stoi(digits);
  };
  if (token.rfind("out", 0) == 0) return RelationKind::arc_out(parse_color(3));
  if (token.rfind("in", 0) == 0) return RelationKind::arc_in(parse_color(2));
  if (token.rfind("edge", 0) == 0) return RelationKind::edge(parse_color(4));
  throw InputError("bad relation kind '" + token + "'");
}

int dual_index(const ColorSignature& sig, int index) noexcept {
  const int m = sig.arc_colors();
  if (index < m) return index + m;
  if (index < 2 * m) return index - m;
  return index;
}

std::string to_string(const Violation& v) {
  std::ostringstream os;
  if (v.line > 0) os << "line " << v.line << ": ";
  os << v.invariant;
  if (v.u >= 0 || v.v >= 0) os << " at pair (" << v.u << ", " << v.v << ")";
  if (!v.detail.empty()) os << ": " << v.detail;
  return os.str();
}

// ---------------------------------------------------------------------------

MixedGraph::MixedGraph(ColorSignature sig, Vertex order)
    : sig_(sig), order_(order) {
  if (order < 0) throw InputError("graph order must be non-negative");
  kinds_.assign(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), -1);
  adjacency_.resize(static_cast<std::size_t>(order));
}

MixedGraph MixedGraph::from_draft(const GraphDraft& draft) {
  if (auto violation = validate(draft)) {
    throw InputError(to_string(*violation));
  }
  MixedGraph g(draft.signature, draft.order);
  for (const auto& r : draft.relations) {
    if (r.is_arc) {
      g.add_arc(r.u, r.v, r.color);
    } else {
      g.add_edge(r.u, r.v, r.color);
    }
  }
  return g;
}

void MixedGraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= order_) {
    throw InputError("vertex " + std::to_string(v) + " out of range [0, " +
                     std::to_string(order_) + ")");
  }
}

void MixedGraph::add_arc(Vertex from, Vertex to, int color) {
  add_relation(from, to, RelationKind::arc_out(color));
}

void MixedGraph::add_edge(Vertex u, Vertex v, int color) {
  add_relation(u, v, RelationKind::edge(color));
}

void MixedGraph::add_relation(Vertex u, Vertex v, RelationKind kind) {
  add_relation_index(u, v, kind.index(sig_));
}

void MixedGraph::add_relation_index(Vertex u, Vertex v, int kind_index) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InputError("loop at vertex " + std::to_string(u));
  if (kind_index < 0 || kind_index >= sig_.p()) {
    throw InputError("relation kind index out of range");
  }
  const auto n = static_cast<std::size_t>(order_);
  auto& uv = kinds_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
  if (uv >= 0) {
    throw InputError("parallel relations at pair (" + std::to_string(u) + ", " +
                     std::to_string(v) + ")");
  }
  uv = static_cast<std::int16_t>(kind_index);
  kinds_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] =
      static_cast<std::int16_t>(dual_index(sig_, kind_index));
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adjacency_[static_cast<std::size_t>(u)], v);
  insert_sorted(adjacency_[static_cast<std::size_t>(v)], u);
  ++relation_count_;
}

void MixedGraph::remove_relation(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (!adjacent(u, v)) {
    throw InputError("no relation at pair (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  const auto n = static_cast<std::size_t>(order_);
  kinds_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = -1;
  kinds_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = -1;
  auto erase = [](std::vector<Vertex>& list, Vertex x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  };
  erase(adjacency_[static_cast<std::size_t>(u)], v);
  erase(adjacency_[static_cast<std::size_t>(v)], u);
  --relation_count_;
}

std::optional<RelationKind> MixedGraph::relation_from(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InputError("relation_from: u == v");
  const int k = kind_index(u, v);
  if (k < 0) return std::nullopt;
  return RelationKind::from_index(sig_, k);
}

std::span<const Vertex> MixedGraph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[static_cast<std::size_t>(v)];
}

int MixedGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return static_cast<int>(best);
}

std::vector<Relation> MixedGraph::relations() const {
  std::vector<Relation> out;
  out.reserve(relation_count_);
  for (Vertex u = 0; u < order_; ++u) {
    for (Vertex v : adjacency_[static_cast<std::size_t>(u)]) {
      if (v > u) out.push_back({u, v, RelationKind::from_index(sig_, kind_index(u, v))});
    }
  }
  return out;
}

bool MixedGraph::same_relations(const MixedGraph& other) const noexcept {
  return sig_ == other.sig_ && order_ == other.order_ && kinds_ == other.kinds_;
}

// ---------------------------------------------------------------------------

std::optional<Violation> validate(const GraphDraft& draft) {
  const auto& sig = draft.signature;
  if (draft.order < 0) return Violation{"negative order", -1, -1, "", 0};
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& r : draft.relations) {
    if (r.u < 0 || r.u >= draft.order || r.v < 0 || r.v >= draft.order) {
      return Violation{"vertex out of range", r.u, r.v,
                       "order is " + std::to_string(draft.order), r.line};
    }
    if (r.u == r.v) return Violation{"loop", r.u, r.v, "", r.line};
    const int limit = r.is_arc ? sig.arc_colors() : sig.edge_colors();
    if (r.color < 1 || r.color > limit) {
      return Violation{"color out of range", r.u, r.v,
                       std::string(r.is_arc ? "arc" : "edge") + " color " +
                           std::to_string(r.color) + " not in [1.." + std::to_string(limit) + "]",
                       r.line};
    }
    const auto key = std::minmax(r.u, r.v);
    if (!seen.insert({key.first, key.second}).second) {
      return Violation{"parallel relations", key.first, key.second, "", r.line};
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate(const MixedGraph& graph) {
  const Vertex n = graph.order();
  const int p = graph.signature().p();
  std::size_t count = 0;
  for (Vertex u = 0; u < n; ++u) {
    if (graph.kind_index(u, u) >= 0) return Violation{"loop", u, u, "", 0};
    for (Vertex v = u + 1; v < n; ++v) {
      const int a = graph.kind_index(u, v);
      const int b = graph.kind_index(v, u);
      if ((a < 0) != (b < 0) || (a >= 0 && b != dual_index(graph.signature(), a))) {
        return Violation{"viewpoint duality", u, v, "", 0};
      }
      if (a >= p) return Violation{"color out of range", u, v, "", 0};
      if (a >= 0) ++count;
    }
  }
  const auto pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  if (count != graph.relation_count() || count > pairs) {
    return Violation{"relation count", -1, -1, "", 0};
  }
  return std::nullopt;
}

void check_query(const MixedGraph& graph, const NeighborhoodQuery& query) {
  if (query.tuple.size() != query.kinds.size()) {
    throw InputError("neighborhood query: tuple and vector lengths differ");
  }
  std::set<Vertex> distinct;
  for (Vertex v : query.tuple) {
    graph.check_vertex(v);
    if (!distinct.insert(v).second) {
      throw InputError("neighborhood query: repeated vertex " + std::to_string(v));
    }
  }
  for (const auto& k : query.kinds) {
    if (!k.valid_for(graph.signature())) {
      throw InputError("neighborhood query: kind " + to_string(k) + " not in signature");
    }
  }
}

void check_property_spec(const PropertySpec& spec) {
  if (spec.t < 0) throw InputError("property spec: t must be non-negative");
  if (spec.g.size() != static_cast<std::size_t>(spec.t) + 1) {
    throw InputError("property spec: g must give a value for every j in 0..t");
  }
  for (auto value : spec.g) {
    if (value < 0) throw InputError("property spec: g values must be non-negative");
  }
}

std::vector<Vertex> common_neighborhood(const MixedGraph& graph, const NeighborhoodQuery& query) {
  check_query(graph, query);
  std::vector<int> wanted;
  wanted.reserve(query.kinds.size());
  for (const auto& k : query.kinds) wanted.push_back(k.index(graph.signature()));

  std::vector<Vertex> out;
  if (query.tuple.empty()) {
    out.resize(static_cast<std::size_t>(graph.order()));
    for (Vertex v = 0; v < graph.order(); ++v) out[static_cast<std::size_t>(v)] = v;
    return out;
  }
  // Candidates must neighbor the first tuple vertex.
  for (Vertex v : graph.neighbors(query.tuple.front())) {
    bool ok = true;
    for (std::size_t i = 0; i < query.tuple.size() && ok; ++i) {
      ok = graph.kind_index(query.tuple[i], v) == wanted[i];
    }
    if (ok) out.push_back(v);
  }
  return out;
}

bool is_special_2path(const MixedGraph& graph, Vertex u, Vertex v, Vertex w) {
  graph.check_vertex(u);
  graph.check_vertex(v);
  graph.check_vertex(w);
  if (u == w) throw InputError("special 2-path: endpoints coincide");
  const int vu = graph.kind_index(v, u);
  const int vw = graph.kind_index(v, w);
  if (u == v || w == v || vu < 0 || vw < 0) {
    throw InputError("special 2-path: " + std::to_string(u) + "-" + std::to_string(v) + "-" +
                     std::to_string(w) + " is not a 2-path");
  }
  return vu != vw;
}

std::vector<std::pair<Vertex, Vertex>> special_pairs(const MixedGraph& graph) {
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (Vertex mid = 0; mid < graph.order(); ++mid) {
    auto nbrs = graph.neighbors(mid);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (graph.kind_index(mid, nbrs[i]) != graph.kind_index(mid, nbrs[j])) {
          pairs.insert(std::minmax(nbrs[i], nbrs[j]));
        }
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

DegeneracyOrder degeneracy_ordering(const MixedGraph& graph) {
  const Vertex n = graph.order();
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = graph.degree(v);
    queue.insert({graph.degree(v), v});
  }
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  DegeneracyOrder result;
  result.order.reserve(static_cast<std::size_t>(n));
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    result.degeneracy = std::max(result.degeneracy, d);
    removed[static_cast<std::size_t>(v)] = true;
    result.order.push_back(v);
    for (Vertex u : graph.neighbors(v)) {
      if (removed[static_cast<std::size_t>(u)]) continue;
      auto& du = degree[static_cast<std::size_t>(u)];
      queue.erase({du, u});
      --du;
      queue.insert({du, u});
    }
  }
  std::reverse(result.order.begin(), result.order.end());
  result.position.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < result.order.size(); ++i) {
    result.position[static_cast<std::size_t>(result.order[i])] = static_cast<int>(i);
  }
  return result;
}

} // namespace cmg
