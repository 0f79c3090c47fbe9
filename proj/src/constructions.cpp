#include "cmg/constructions.hpp"

#include <algorithm>
#include <sstream>

namespace cmg {

std::string to_string(const HkRole& role, const ColorSignature& sig) {
  std::ostringstream os;
  switch (role.kind) {
  case HkRole::Kind::Bottom:
    os << "bottom(" << role.group << "," << role.index << ")";
    break;
  case HkRole::Kind::Top:
    os << "top(" << role.group;
    for (int a : role.vector) os << "," << to_string(RelationKind::from_index(sig, a));
    os << ")";
    break;
  case HkRole::Kind::Internal:
    os << "internal(" << role.left << "," << role.right << ")";
    break;
  }
  return os.str();
}

std::vector<Vertex> HkGraph::tops() const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < roles.size(); ++v) {
    if (roles[v].kind == HkRole::Kind::Top) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<std::string> HkGraph::annotations() const {
  std::vector<std::string> out;
  out.reserve(roles.size());
  for (const auto& r : roles) out.push_back(to_string(r, graph.signature()));
  return out;
}

void add_special_path(MixedGraph& g, Vertex u, Vertex middle, Vertex v) {
  if (g.signature().arc_colors() >= 1) {
    g.add_arc(u, middle, 1);
    g.add_arc(middle, v, 1);
  } else {
    g.add_edge(u, middle, 1);
    g.add_edge(middle, v, 2);
  }
}

HkGraph build_hk(const ColorSignature& sig, int k) {
  sig.require_nontrivial("build_hk");
  if (k < 3) throw InputError("build_hk: requires k >= 3");
  const int p = sig.p();

  long long vectors = 1;
  for (int i = 0; i < k - 1; ++i) {
    vectors *= p;
    if (vectors > 1'000'000) throw InputError("build_hk: p^(k-1) too large");
  }
  const long long bottoms = static_cast<long long>(k) * (k - 1);
  const long long tops = k * vectors;
  const long long internals = static_cast<long long>(k) * (k - 1) / 2 * vectors * vectors;
  const long long order = bottoms + tops + internals;
  if (order > 20'000) throw InputError("build_hk: construction too large for a dense graph");

  HkGraph h{MixedGraph(sig, static_cast<Vertex>(order)), {}, k};
  h.roles.resize(static_cast<std::size_t>(order));

  auto bottom_id = [&](int i, int j) { return static_cast<Vertex>((i - 1) * (k - 1) + (j - 1)); };
  auto top_id = [&](int i, long long code) {
    return static_cast<Vertex>(bottoms + (i - 1) * vectors + code);
  };

  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k - 1; ++j) {
      auto& role = h.roles[static_cast<std::size_t>(bottom_id(i, j))];
      role.kind = HkRole::Kind::Bottom;
      role.group = i;
      role.index = j;
    }
  }
  for (int i = 1; i <= k; ++i) {
    for (long long code = 0; code < vectors; ++code) {
      const Vertex t = top_id(i, code);
      auto& role = h.roles[static_cast<std::size_t>(t)];
      role.kind = HkRole::Kind::Top;
      role.group = i;
      role.vector.resize(static_cast<std::size_t>(k - 1));
      // First coordinate most significant.
      long long rest = code;
      for (int j = k - 1; j >= 1; --j) {
        role.vector[static_cast<std::size_t>(j - 1)] = static_cast<int>(rest % p);
        rest /= p;
      }
      for (int j = 1; j <= k - 1; ++j) {
        h.graph.add_relation_index(bottom_id(i, j), t, role.vector[static_cast<std::size_t>(j - 1)]);
      }
    }
  }
  Vertex next = static_cast<Vertex>(bottoms + tops);
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      for (long long a = 0; a < vectors; ++a) {
        for (long long b = 0; b < vectors; ++b) {
          const Vertex u = top_id(i, a);
          const Vertex v = top_id(j, b);
          auto& role = h.roles[static_cast<std::size_t>(next)];
          role.kind = HkRole::Kind::Internal;
          role.left = u;
          role.right = v;
          add_special_path(h.graph, u, next, v);
          ++next;
        }
      }
    }
  }
  return h;
}

std::vector<int> hk_acyclic_coloring(const HkGraph& h) {
  std::vector<int> color(h.roles.size(), -1);
  for (std::size_t v = 0; v < h.roles.size(); ++v) {
    const auto& role = h.roles[v];
    if (role.kind == HkRole::Kind::Top) {
      color[v] = role.group - 1;
    } else if (role.kind == HkRole::Kind::Bottom) {
      // j-th smallest color of {0..k-1} \ {group-1}.
      const int skip = role.group - 1;
      const int c = role.index - 1;
      color[v] = c < skip ? c : c + 1;
    }
  }
  for (std::size_t v = 0; v < h.roles.size(); ++v) {
    const auto& role = h.roles[v];
    if (role.kind != HkRole::Kind::Internal) continue;
    const int a = color[static_cast<std::size_t>(role.left)];
    const int b = color[static_cast<std::size_t>(role.right)];
    int c = 0;
    while (c == a || c == b) ++c;
    color[v] = c;
  }
  return color;
}

MixedGraph build_special_gadget(const ColorSignature& sig, int t) {
  sig.require_nontrivial("build_special_gadget");
  if (t < 2) throw InputError("build_special_gadget: requires t >= 2");
  if (t > 2000) throw InputError("build_special_gadget: t too large");
  const Vertex order = t + t * (t - 1) / 2;
  MixedGraph g(sig, order);
  Vertex next = t;
  for (Vertex a = 0; a < t; ++a) {
    for (Vertex b = a + 1; b < t; ++b) add_special_path(g, a, next++, b);
  }
  return g;
}

} // namespace cmg
