#pragma once

// Exact colored homomorphism search and exact (m,n)-colored mixed
// chromatic number by partition search.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmg/core.hpp"

namespace cmg {

struct Homomorphism {
  Vertex source_order = 0;
  Vertex target_order = 0;
  std::vector<Vertex> map;
};

struct HomViolation {
  Vertex u = -1; ///< first failing source pair
  Vertex v = -1;
  std::string reason;
};

std::string to_string(const HomViolation& v);

/// Checks that `map` sends every relation of `source` to the same relation
/// (kind, color, direction) in `target`. Throws InputError on signature
/// mismatch, a non-total map, or out-of-range images.
std::optional<HomViolation> check_homomorphism(const MixedGraph& source, const MixedGraph& target,
                                               std::span<const Vertex> map);

enum class SearchStatus { Exact, UnknownInBudget };

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct HomSearchResult {
  SearchStatus status = SearchStatus::Exact;
  std::optional<Homomorphism> hom; ///< empty + Exact means proven non-existence
  std::uint64_t nodes = 0;
};

/// Backtracking over source vertices, most-constrained first. Candidate
/// images are the common neighborhood (in the target) of the images of the
/// already-mapped neighbors, with the kinds those neighbors require.
HomSearchResult find_homomorphism(const MixedGraph& source, const MixedGraph& target,
                                  std::uint64_t node_budget = kDefaultNodeBudget);

/// Vertex partition whose quotient is a colored mixed graph: blocks are
/// independent, and between two blocks every relation has one kind.
struct ColorClassPartition {
  std::vector<int> block_of;
  int block_count = 0;
};

std::optional<Violation> check_partition(const MixedGraph& graph,
                                         const ColorClassPartition& partition);

/// Partition from an arbitrary labeling; labels are renumbered densely in
/// order of first appearance.
ColorClassPartition partition_from_labels(std::span<const int> labels);

/// The homomorphic image given by a valid partition; the block map is the
/// homomorphism. Throws InputError if the partition is invalid.
MixedGraph quotient(const MixedGraph& graph, const ColorClassPartition& partition);

struct ChromaticOptions {
  int lower_hint = 0;  ///< trusted lower bound (0 = none)
  int upper_hint = 0;  ///< first cutoff to try (0 = order)
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct ChromaticResult {
  SearchStatus status = SearchStatus::Exact;
  int lower = 0;  ///< proven lower bound
  int upper = 0;  ///< size of `witness`
  ColorClassPartition witness;
  std::vector<Vertex> clique; ///< special clique used for the lower bound
  std::uint64_t nodes = 0;

  bool exact() const noexcept { return status == SearchStatus::Exact; }
  int value() const noexcept { return upper; }
};

/// Exact chi_(m,n) by branch and bound over vertex -> block assignments.
/// When the budget runs out the result carries the best bounds so far.
ChromaticResult chromatic_number(const MixedGraph& graph, const ChromaticOptions& options = {});

/// Greedy clique in the "joined by a special 2-path" relation, grown from
/// every start vertex; the largest is returned. Its members need pairwise
/// distinct images under every homomorphism.
std::vector<Vertex> special_clique(const MixedGraph& graph);

} // namespace cmg
