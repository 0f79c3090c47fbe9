#pragma once

// Data model for (m,n)-colored mixed graphs: graphs whose adjacencies are
// arcs carrying one of m colors or edges carrying one of n colors, over a
// simple underlying graph.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmg {

using Vertex = std::int32_t;

/// Raised for malformed inputs: bad vertex ids, colors outside the
/// signature, mismatched signatures, unmet preconditions.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Number of arc colors m and edge colors n. The count of adjacency kinds
/// seen from a vertex is p = 2m + n.
class ColorSignature {
public:
  ColorSignature(int arc_colors, int edge_colors);

  int arc_colors() const noexcept { return m_; }
  int edge_colors() const noexcept { return n_; }
  int p() const noexcept { return 2 * m_ + n_; }

  /// Throws InputError unless p >= 2, i.e. the signature is not (0,1).
  void require_nontrivial(const char* what) const;

  friend bool operator==(const ColorSignature&, const ColorSignature&) = default;

private:
  int m_;
  int n_;
};

std::string to_string(const ColorSignature& sig);

enum class RelationType : std::uint8_t { ArcOut, ArcIn, Edge };

/// How a vertex sees one of its neighbors: the far end of an outgoing arc,
/// the near end of an incoming arc, or an edge. Colors are 1-based.
///
/// Canonical index: ArcOut(1..m), ArcIn(1..m), Edge(1..n) map to 0..p-1.
struct RelationKind {
  RelationType type = RelationType::Edge;
  int color = 1;

  static RelationKind arc_out(int c) { return {RelationType::ArcOut, c}; }
  static RelationKind arc_in(int c) { return {RelationType::ArcIn, c}; }
  static RelationKind edge(int c) { return {RelationType::Edge, c}; }
  static RelationKind from_index(const ColorSignature& sig, int index);

  int index(const ColorSignature& sig) const;
  bool valid_for(const ColorSignature& sig) const noexcept;

  /// The same relation seen from the other endpoint.
  RelationKind dual() const noexcept;

  friend auto operator<=>(const RelationKind&, const RelationKind&) = default;
};

std::string to_string(const RelationKind& kind);
/// Parses the forms produced by to_string: "out<c>", "in<c>", "edge<c>".
RelationKind parse_relation_kind(const std::string& token);

/// Dual of a canonical kind index.
int dual_index(const ColorSignature& sig, int index) noexcept;

/// One relation as written in a file or passed to a builder, before the
/// simplicity invariants are checked.
struct RelationRecord {
  Vertex u = 0;
  Vertex v = 0;
  bool is_arc = false; ///< arc u->v when true, edge u-v otherwise
  int color = 1;
  std::size_t line = 0; ///< source line, 0 when not from a file
};

struct GraphDraft {
  ColorSignature signature{0, 1};
  Vertex order = 0;
  std::vector<RelationRecord> relations;
};

struct Violation {
  std::string invariant; ///< e.g. "parallel relations", "color out of range"
  Vertex u = -1;
  Vertex v = -1;
  std::string detail;
  std::size_t line = 0;
};

std::string to_string(const Violation& v);

/// A relation listed from its lower endpoint: `kind` is how u sees v.
struct Relation {
  Vertex u;
  Vertex v;
  RelationKind kind;
};

/// An (m,n)-colored mixed graph on vertices 0..order-1.
///
/// Relations live in a dense order x order matrix of canonical kind indices
/// (how the row vertex sees the column vertex), so at most one relation per
/// pair exists by construction and the two views of a pair are always dual.
/// Mutators are for the single owner that builds the graph; a finished
/// graph is safe to read from many threads.
class MixedGraph {
public:
  MixedGraph(ColorSignature sig, Vertex order);

  /// Builds from a draft, throwing InputError with the first violation.
  static MixedGraph from_draft(const GraphDraft& draft);

  const ColorSignature& signature() const noexcept { return sig_; }
  Vertex order() const noexcept { return order_; }
  std::size_t relation_count() const noexcept { return relation_count_; }

  void add_arc(Vertex from, Vertex to, int color);
  void add_edge(Vertex u, Vertex v, int color);
  /// Adds the relation such that relation_from(u, v) == kind.
  void add_relation(Vertex u, Vertex v, RelationKind kind);
  void add_relation_index(Vertex u, Vertex v, int kind_index);
  void remove_relation(Vertex u, Vertex v);

  /// How u sees v, or nullopt when the pair is non-adjacent.
  std::optional<RelationKind> relation_from(Vertex u, Vertex v) const;

  /// Canonical kind index of relation_from(u, v), -1 when non-adjacent.
  /// Unchecked; for hot loops.
  int kind_index(Vertex u, Vertex v) const noexcept {
    return kinds_[static_cast<std::size_t>(u) * static_cast<std::size_t>(order_) +
                  static_cast<std::size_t>(v)];
  }
  bool adjacent(Vertex u, Vertex v) const noexcept { return kind_index(u, v) >= 0; }

  /// Neighbors in increasing order.
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const noexcept;

  /// All relations, each once from its lower endpoint, sorted by (u, v).
  std::vector<Relation> relations() const;

  /// Identical signature, order and relation matrix.
  bool same_relations(const MixedGraph& other) const noexcept;

  void check_vertex(Vertex v) const;

private:
  ColorSignature sig_;
  Vertex order_;
  std::size_t relation_count_ = 0;
  std::vector<std::int16_t> kinds_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Checks every MixedGraph invariant; reports the first violation.
std::optional<Violation> validate(const GraphDraft& draft);
std::optional<Violation> validate(const MixedGraph& graph);

/// Query N^a(J): vertices v with relation_from(J[i], v) == kinds[i] for all i.
struct NeighborhoodQuery {
  std::vector<Vertex> tuple;
  std::vector<RelationKind> kinds;
};

/// Minimum common-neighborhood sizes g(0..t) for property Q.
struct PropertySpec {
  int t = 0;
  std::vector<std::int64_t> g; ///< g.size() == t + 1
};

void check_query(const MixedGraph& graph, const NeighborhoodQuery& query);
void check_property_spec(const PropertySpec& spec);

/// Sorted vertex set N^a(J). The empty query returns every vertex.
std::vector<Vertex> common_neighborhood(const MixedGraph& graph,
                                        const NeighborhoodQuery& query);

/// True iff the 2-path u-v-w is special, i.e. its endpoints can never share
/// an image: v sees u and w through different relation kinds.
bool is_special_2path(const MixedGraph& graph, Vertex u, Vertex v, Vertex w);

/// Unordered pairs {u, w} (u < w) joined by at least one special 2-path,
/// sorted.
std::vector<std::pair<Vertex, Vertex>> special_pairs(const MixedGraph& graph);

struct DegeneracyOrder {
  int degeneracy = 0;
  std::vector<Vertex> order;    ///< each vertex has <= degeneracy earlier neighbors
  std::vector<int> position;    ///< inverse of order
};

/// Min-degree peeling (ties to the smallest index), reversed.
DegeneracyOrder degeneracy_ordering(const MixedGraph& graph);

} // namespace cmg
