#pragma once

// Arboricity (exact Nash-Williams density at small order, greedy forest
// peeling otherwise), acyclic colorings, and the construction of an acyclic
// coloring from homomorphisms of base-p "digit" orientations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmg/bounds.hpp"
#include "cmg/core.hpp"
#include "cmg/io.hpp"
#include "cmg/solver.hpp"

namespace cmg {

struct UndirectedEdge {
  Vertex u; ///< u < v
  Vertex v;
  friend auto operator<=>(const UndirectedEdge&, const UndirectedEdge&) = default;
};

/// Underlying edges of a graph, sorted.
std::vector<UndirectedEdge> underlying_edges(const MixedGraph& graph);

struct ForestDecomposition {
  int forest_count = 0;
  std::vector<UndirectedEdge> edges; ///< sorted underlying edges
  std::vector<int> forest_of;        ///< parallel to `edges`

  std::vector<ForestRecord> records() const;
};

/// Every underlying edge assigned exactly once, and each class acyclic.
std::optional<std::string> check_forest_decomposition(const MixedGraph& graph,
                                                      const ForestDecomposition& fd);

/// Builds a decomposition from `forest u v i` records (u, v in any order).
ForestDecomposition decomposition_from_records(const MixedGraph& graph,
                                               const std::vector<ForestRecord>& records);

struct ArboricityWitness {
  int arboricity = 0;
  std::vector<Vertex> subgraph; ///< vertex set of a densest induced subgraph
  std::int64_t edges = 0;       ///< edges inside `subgraph`
};

inline constexpr int kDefaultSubsetLimit = 20;

/// max over vertex subsets S (|S| >= 2) of ceil(e(S) / (|S| - 1)), by
/// enumerating all subsets in parallel. nullopt when order > subset_limit.
/// The witness maximizes the exact density; ties go to the smallest subset
/// bitmask.
std::optional<ArboricityWitness> nash_williams_density(const MixedGraph& graph,
                                                       int subset_limit = kDefaultSubsetLimit);

/// Single-threaded reference for nash_williams_density, same result.
std::optional<ArboricityWitness> nash_williams_density_serial(
    const MixedGraph& graph, int subset_limit = kDefaultSubsetLimit);

/// Repeatedly removes a depth-first spanning forest of the remaining edges.
/// Valid for any graph; uses at least arb(G) forests.
ForestDecomposition greedy_forests(const MixedGraph& graph);

struct AcyclicViolation {
  enum class Kind { NotTotal, MonochromaticEdge, BichromaticCycle };
  Kind kind = Kind::NotTotal;
  std::vector<Vertex> witness; ///< the edge, or the cycle's vertices in order
};

std::string to_string(const AcyclicViolation& v);

/// Proper, and every two color classes induce a forest.
std::optional<AcyclicViolation> check_acyclic_coloring(const MixedGraph& graph,
                                                       std::span<const int> colors);

struct AcyclicColoring {
  std::vector<int> colors;
  int palette = 0;
};

struct AcyclicResult {
  SearchStatus status = SearchStatus::Exact;
  int lower = 0;
  int upper = 0;
  AcyclicColoring witness;
  std::uint64_t nodes = 0;

  bool exact() const noexcept { return status == SearchStatus::Exact; }
};

/// Exact acyclic chromatic number by backtracking; each assignment checks
/// the affected color pairs for a closed cycle with a union-find.
AcyclicResult acyclic_chromatic_number(const MixedGraph& graph,
                                       std::uint64_t node_budget = kDefaultNodeBudget);

struct DigitLayers {
  int digits = 0;                   ///< s = ceil(log_p r)
  std::vector<Vertex> vertex_order; ///< the fixed order used for orientation
  std::vector<MixedGraph> layers;   ///< G_0 .. G_s
};

/// G_0 gives every underlying edge kind a_0 seen from its earlier endpoint
/// (in `vertex_order`); G_l for l >= 1 gives an edge of forest i the kind
/// a_d seen from its earlier endpoint, where d is the l-th digit of i
/// written in base p with exactly s digits (l = 1 is the leading digit).
/// Kinds use the canonical index order.
/// `vertex_order` defaults to the degeneracy order.
DigitLayers digit_graphs(const MixedGraph& graph, const ForestDecomposition& fd,
                         const ColorSignature& sig, std::vector<Vertex> vertex_order = {});

struct PipelineResult {
  SearchStatus status = SearchStatus::Exact;
  AcyclicColoring coloring;
  DigitLayers layers;
  std::vector<int> layer_chi; ///< exact chi of each layer
  std::vector<ColorClassPartition> layer_partitions;
  int k = 0;                  ///< max layer chi
  BigInt palette_bound;       ///< k^(s+1)
};

/// Colors each vertex by the tuple of its blocks in minimum homomorphic
/// images of every digit layer, renumbered densely. Layers are solved in
/// parallel.
PipelineResult acyclic_from_homomorphisms(const MixedGraph& graph, const ForestDecomposition& fd,
                                          const ColorSignature& sig,
                                          std::uint64_t hom_budget = kDefaultNodeBudget);

} // namespace cmg
