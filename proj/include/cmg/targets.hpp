#pragma once

// Complete colored mixed targets: uniform random sampling, the common-
// neighborhood property Q, rejection search for targets that have it, the
// greedy homomorphism into such a target, and the two-vertex extension
// that handles regular graphs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmg/bounds.hpp"
#include "cmg/core.hpp"
#include "cmg/solver.hpp"

namespace cmg {

struct CompleteMixedTarget {
  MixedGraph graph;
  std::uint64_t seed = 0;
};

/// Each pair u < v, in lexicographic order, independently gets one of the p
/// kinds (as seen from u) uniformly, drawn from mt19937_64(seed). The draw
/// does not depend on the standard library's distributions, so output is
/// identical across platforms. Requires p >= 2 and order >= 1.
CompleteMixedTarget sample_complete(const ColorSignature& sig, Vertex order, std::uint64_t seed);

/// Seed of attempt `attempt` in a search started from `seed` (SplitMix64).
std::uint64_t attempt_seed(std::uint64_t seed, std::uint64_t attempt);

/// Paley tournament on Z_q: x -> y iff y - x is a non-zero square mod q.
/// q must be a prime congruent to 3 mod 4. Signature (1,0).
MixedGraph paley_tournament(int q);

struct LemmaParameters {
  BigInt order;              ///< c = 2 (t-1)^p p^(t-1)
  PropertySpec spec;         ///< t-1, g(j) = 1 + (t-j)(t-2)
  bool below_hypothesis = false; ///< t < 5: the existence guarantee does not apply
};

/// Order and property for which a random complete target has property Q
/// with positive probability. Requires p >= 2, t >= 2.
LemmaParameters lemma_parameters(const ColorSignature& sig, int t);

/// Failing query: |N^kinds(tuple)| = count < required.
struct QWitness {
  int j = 0;
  std::vector<Vertex> tuple;
  std::vector<RelationKind> kinds;
  std::int64_t count = 0;
  std::int64_t required = 0;
};

std::string to_string(const QWitness& w);

/// Checks property Q for every j <= spec.t, every j-tuple and every kind
/// vector. Returns the first failing query in (j, tuple, vector) order;
/// tuples are enumerated as increasing sequences, which covers every
/// ordered tuple since permuting a tuple permutes its vector. Parallel over
/// the first tuple vertex. Throws InputError when spec.t >= order.
std::optional<QWitness> check_property_q(const MixedGraph& target, const PropertySpec& spec);

/// Single-threaded reference for check_property_q, same result.
std::optional<QWitness> check_property_q_serial(const MixedGraph& target, const PropertySpec& spec);

struct QSearchResult {
  std::optional<CompleteMixedTarget> target;
  std::uint64_t base_seed = 0;
  int attempt = -1;      ///< index of the successful attempt
  int attempts = 0;      ///< budget
};

/// Samples with attempt_seed(seed, i) for i = 0..attempts-1 and returns the
/// lowest i whose target has the property. Attempts run in parallel.
QSearchResult search_q_target(const ColorSignature& sig, Vertex order, const PropertySpec& spec,
                              int attempts, std::uint64_t seed);

/// Single-threaded reference for search_q_target, same result.
QSearchResult search_q_target_serial(const ColorSignature& sig, Vertex order,
                                     const PropertySpec& spec, int attempts, std::uint64_t seed);

struct GreedyStep {
  Vertex vertex = -1;
  NeighborhoodQuery query;          ///< images of mapped neighbors, kinds they require
  std::vector<Vertex> candidates;   ///< D
  std::vector<Vertex> blocked;      ///< B
  Vertex image = -1;
};

struct GreedyFailure {
  std::size_t step = 0;
  GreedyStep at;
  std::string message() const;
};

struct GreedyResult {
  std::optional<Homomorphism> hom;
  std::optional<GreedyFailure> failure;
  std::vector<Vertex> order;
  std::vector<GreedyStep> trace;
  int degeneracy = 0;
  int max_degree = 0;
};

/// For a partial map (-1 = unmapped): every unmapped vertex sees its mapped
/// neighbors under pairwise distinct images. Returns the offending vertex.
std::optional<Vertex> distinct_images_violation(const MixedGraph& graph,
                                                std::span<const Vertex> partial);

/// Maps vertices in degeneracy order (or `order` when given). Each vertex
/// goes to the smallest target vertex in D \ B, where D is the common
/// neighborhood the mapped neighbors require and B holds the images of
/// mapped vertices adjacent to one of its unmapped neighbors. Empty
/// D \ B is reported as a failure naming the query. The distinct-images
/// invariant is asserted after every step.
GreedyResult greedy_homomorphism(const MixedGraph& graph, const MixedGraph& target,
                                 std::vector<Vertex> order = {});

struct RegularExtension {
  std::optional<MixedGraph> target; ///< c plus two vertices
  std::optional<Homomorphism> hom;
  std::optional<GreedyFailure> failure;
  Vertex removed_u = -1;
  Vertex removed_v = -1;
};

/// Removes the smallest edge uv of a connected regular graph, maps the rest
/// greedily into `target`, and adds vertices u', v' to the target so that
/// u -> u', v -> v' completes the homomorphism. Unconstrained pairs of the
/// new vertices get kind a_0.
RegularExtension extend_regular(const MixedGraph& graph, const MixedGraph& target);

} // namespace cmg
