#pragma once

// Extremal constructions: the tightness graph H_k with its k-color acyclic
// coloring, and the subdivided clique whose branch vertices are pairwise
// joined by special 2-paths.

#include <string>
#include <vector>

#include "cmg/core.hpp"

namespace cmg {

struct HkRole {
  enum class Kind { Bottom, Top, Internal };
  Kind kind = Kind::Bottom;
  int group = 0;            ///< i in 1..k for bottom/top vertices
  int index = 0;            ///< j in 1..k-1 for bottom vertices
  std::vector<int> vector;  ///< canonical kind indices of a top vertex's (k-1)-vector
  Vertex left = -1;         ///< top endpoints of an internal vertex
  Vertex right = -1;
};

std::string to_string(const HkRole& role, const ColorSignature& sig);

struct HkGraph {
  MixedGraph graph;
  std::vector<HkRole> roles;
  int k = 0;

  std::vector<Vertex> tops() const;
  std::vector<std::string> annotations() const;
};

/// Vertex layout: bottoms b^i_j (i-major), then tops t^i_a (i-major, vectors
/// in lexicographic canonical-kind order), then one internal vertex per pair
/// of tops from different groups. Requires p >= 2 and k >= 3.
HkGraph build_hk(const ColorSignature& sig, int k);

/// k-color acyclic coloring (colors 0..k-1): group i tops get i-1, the
/// bottoms of group i take the other k-1 colors in increasing order, and
/// each internal vertex takes the smallest color unlike both neighbors.
std::vector<int> hk_acyclic_coloring(const HkGraph& h);

/// The two-relation special path used to join u and v through `middle`:
/// arcs u->middle->v of color 1 when m >= 1, else edges of colors 1 and 2.
void add_special_path(MixedGraph& g, Vertex u, Vertex middle, Vertex v);

/// K_t with each edge replaced by a special 2-path. Branch vertices are
/// 0..t-1; the vertex subdividing {a,b} (a<b) follows in lexicographic
/// pair order. Requires p >= 2 and t >= 2.
MixedGraph build_special_gadget(const ColorSignature& sig, int t);

} // namespace cmg
