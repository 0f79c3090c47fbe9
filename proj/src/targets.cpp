#include "cmg/targets.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cmg {

namespace {

// Uniform draw from [0, bound) without std::uniform_int_distribution, whose
// output differs between standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

constexpr std::uint64_t kMaxVectors = 1U << 24U;

std::uint64_t vector_count(int p, int j) {
  std::uint64_t count = 1;
  for (int i = 0; i < j; ++i) {
    count *= static_cast<std::uint64_t>(p);
    if (count > kMaxVectors) throw InputError("check_property_q: p^t too large");
  }
  return count;
}

// Scans all tuples starting with `first` (the rest increasing) for a
// failing vector. Returns the first failure in lexicographic order.
std::optional<QWitness> scan_first(const MixedGraph& target, int j, std::int64_t need,
                                   Vertex first, std::vector<std::int64_t>& histogram) {
  const Vertex n = target.order();
  const int p = target.signature().p();
  const std::uint64_t vectors = vector_count(p, j);
  std::vector<Vertex> tuple(static_cast<std::size_t>(j));
  tuple[0] = first;
  for (int i = 1; i < j; ++i) tuple[static_cast<std::size_t>(i)] = first + i;
  if (j > 0 && tuple.back() >= n) return std::nullopt;
  for (;;) {
    std::fill(histogram.begin(), histogram.begin() + static_cast<std::ptrdiff_t>(vectors), 0);
    for (Vertex v = 0; v < n; ++v) {
      std::uint64_t code = 0;
      bool inside = true;
      for (const Vertex x : tuple) {
        const int kind = target.kind_index(x, v);
        if (kind < 0) {
          inside = false;
          break;
        }
        code = code * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(kind);
      }
      if (inside) ++histogram[code];
    }
    for (std::uint64_t code = 0; code < vectors; ++code) {
      if (histogram[code] >= need) continue;
      QWitness w;
      w.j = j;
      w.tuple = tuple;
      w.kinds.resize(static_cast<std::size_t>(j));
      std::uint64_t rest = code;
      for (int i = j - 1; i >= 0; --i) {
        w.kinds[static_cast<std::size_t>(i)] =
            RelationKind::from_index(target.signature(), static_cast<int>(rest % static_cast<std::uint64_t>(p)));
        rest /= static_cast<std::uint64_t>(p);
      }
      w.count = histogram[code];
      w.required = need;
      return w;
    }
    // Next combination with tuple[0] fixed.
    int i = j - 1;
    while (i >= 1 && tuple[static_cast<std::size_t>(i)] == n - (j - i)) --i;
    if (i < 1) return std::nullopt;
    ++tuple[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < j; ++k) {
      tuple[static_cast<std::size_t>(k)] = tuple[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
}

void require_q_inputs(const MixedGraph& target, const PropertySpec& spec) {
  check_property_spec(spec);
  if (spec.t >= target.order()) throw InputError("check_property_q: requires t < order");
  vector_count(target.signature().p(), spec.t);
}

std::optional<QWitness> check_order_zero(const MixedGraph& target, const PropertySpec& spec) {
  if (target.order() >= spec.g[0]) return std::nullopt;
  QWitness w;
  w.count = target.order();
  w.required = spec.g[0];
  return w;
}

QSearchResult empty_search(const ColorSignature& sig, const PropertySpec& spec, int attempts,
                           std::uint64_t seed) {
  sig.require_nontrivial("search_q_target");
  check_property_spec(spec);
  if (attempts < 0) throw InputError("search_q_target: attempts must be >= 0");
  QSearchResult result;
  result.base_seed = seed;
  result.attempts = attempts;
  return result;
}

bool attempt_passes(const ColorSignature& sig, Vertex order, const PropertySpec& spec,
                    std::uint64_t seed) {
  const auto target = sample_complete(sig, order, seed);
  return !check_property_q_serial(target.graph, spec).has_value();
}

std::vector<Vertex> set_minus(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string join(const std::vector<Vertex>& xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

} // namespace

CompleteMixedTarget sample_complete(const ColorSignature& sig, Vertex order, std::uint64_t seed) {
  sig.require_nontrivial("sample_complete");
  if (order < 1) throw InputError("sample_complete: order must be >= 1");
  CompleteMixedTarget out{MixedGraph(sig, order), seed};
  std::mt19937_64 rng(seed);
  const auto p = static_cast<std::uint64_t>(sig.p());
  for (Vertex u = 0; u < order; ++u) {
    for (Vertex v = u + 1; v < order; ++v) {
      out.graph.add_relation_index(u, v, static_cast<int>(uniform_below(rng, p)));
    }
  }
  return out;
}

std::uint64_t attempt_seed(std::uint64_t seed, std::uint64_t attempt) {
  return splitmix64(splitmix64(seed) ^ attempt);
}

MixedGraph paley_tournament(int q) {
  if (!is_prime(q) || q % 4 != 3) {
    throw InputError("paley_tournament: q must be a prime congruent to 3 mod 4");
  }
  std::vector<bool> square(static_cast<std::size_t>(q), false);
  for (int x = 1; x < q; ++x) square[static_cast<std::size_t>(x * x % q)] = true;
  MixedGraph g(ColorSignature(1, 0), q);
  for (int x = 0; x < q; ++x) {
    for (int y = x + 1; y < q; ++y) {
      if (square[static_cast<std::size_t>(y - x)]) {
        g.add_arc(x, y, 1);
      } else {
        g.add_arc(y, x, 1);
      }
    }
  }
  return g;
}

LemmaParameters lemma_parameters(const ColorSignature& sig, int t) {
  sig.require_nontrivial("lemma_parameters");
  if (t < 2) throw InputError("lemma_parameters: requires t >= 2");
  const int p = sig.p();
  LemmaParameters out;
  out.order = 2 * int_pow(BigInt(t - 1), static_cast<std::uint64_t>(p)) *
              int_pow(BigInt(p), static_cast<std::uint64_t>(t - 1));
  out.spec.t = t - 1;
  for (int j = 0; j <= t - 1; ++j) out.spec.g.push_back(1 + static_cast<std::int64_t>(t - j) * (t - 2));
  out.below_hypothesis = t < 5;
  return out;
}

std::string to_string(const QWitness& w) {
  std::ostringstream os;
  os << "j=" << w.j << " tuple=" << join(w.tuple) << " kinds=(";
  for (std::size_t i = 0; i < w.kinds.size(); ++i) os << (i ? "," : "") << to_string(w.kinds[i]);
  os << ") count=" << w.count << " required=" << w.required;
  return os.str();
}

std::optional<QWitness> check_property_q_serial(const MixedGraph& target, const PropertySpec& spec) {
  require_q_inputs(target, spec);
  if (auto w = check_order_zero(target, spec)) return w;
  std::vector<std::int64_t> histogram(vector_count(target.signature().p(), spec.t));
  for (int j = 1; j <= spec.t; ++j) {
    for (Vertex first = 0; first < target.order(); ++first) {
      if (auto w = scan_first(target, j, spec.g[static_cast<std::size_t>(j)], first, histogram)) {
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<QWitness> check_property_q(const MixedGraph& target, const PropertySpec& spec) {
  require_q_inputs(target, spec);
  if (auto w = check_order_zero(target, spec)) return w;
  const Vertex n = target.order();
  const std::size_t vectors = vector_count(target.signature().p(), spec.t);
  for (int j = 1; j <= spec.t; ++j) {
    const std::int64_t need = spec.g[static_cast<std::size_t>(j)];
    std::vector<std::optional<QWitness>> found(static_cast<std::size_t>(n));
    std::atomic<Vertex> lowest{n};
#pragma omp parallel
    {
      std::vector<std::int64_t> histogram(vectors);
#pragma omp for schedule(dynamic)
      for (Vertex first = 0; first < n; ++first) {
        if (first > lowest.load(std::memory_order_relaxed)) continue;
        found[static_cast<std::size_t>(first)] = scan_first(target, j, need, first, histogram);
        if (found[static_cast<std::size_t>(first)]) {
          Vertex current = lowest.load();
          while (first < current && !lowest.compare_exchange_weak(current, first)) {
          }
        }
      }
    }
    if (lowest.load() < n) return found[static_cast<std::size_t>(lowest.load())];
  }
  return std::nullopt;
}

QSearchResult search_q_target_serial(const ColorSignature& sig, Vertex order,
                                     const PropertySpec& spec, int attempts, std::uint64_t seed) {
  QSearchResult result = empty_search(sig, spec, attempts, seed);
  for (int i = 0; i < attempts; ++i) {
    const std::uint64_t s = attempt_seed(seed, static_cast<std::uint64_t>(i));
    if (attempt_passes(sig, order, spec, s)) {
      result.target = sample_complete(sig, order, s);
      result.attempt = i;
      return result;
    }
  }
  return result;
}

QSearchResult search_q_target(const ColorSignature& sig, Vertex order, const PropertySpec& spec,
                              int attempts, std::uint64_t seed) {
  QSearchResult result = empty_search(sig, spec, attempts, seed);
  if (spec.t >= order) throw InputError("search_q_target: requires t < order");
  std::atomic<int> lowest{attempts};
  std::atomic<bool> failed{false};
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < attempts; ++i) {
    if (i > lowest.load(std::memory_order_relaxed) || failed.load()) continue;
    try {
      if (attempt_passes(sig, order, spec, attempt_seed(seed, static_cast<std::uint64_t>(i)))) {
        int current = lowest.load();
        while (i < current && !lowest.compare_exchange_weak(current, i)) {
        }
      }
    } catch (const std::exception& e) {
#pragma omp critical(cmg_search_q_error)
      {
        if (!failed.exchange(true)) error = e.what();
      }
    }
  }
  if (failed.load()) throw InputError(error);
  if (lowest.load() < attempts) {
    result.attempt = lowest.load();
    result.target =
        sample_complete(sig, order, attempt_seed(seed, static_cast<std::uint64_t>(result.attempt)));
  }
  return result;
}

std::string GreedyFailure::message() const {
  std::ostringstream os;
  os << "property violated at step " << step << " (vertex " << at.vertex << "): images "
     << join(at.query.tuple) << " kinds (";
  for (std::size_t i = 0; i < at.query.kinds.size(); ++i) {
    os << (i ? "," : "") << to_string(at.query.kinds[i]);
  }
  os << ") |D|=" << at.candidates.size() << " B=" << join(at.blocked) << ", D\\B is empty";
  return os.str();
}

std::optional<Vertex> distinct_images_violation(const MixedGraph& graph,
                                                std::span<const Vertex> partial) {
  std::vector<Vertex> seen;
  for (Vertex a = 0; a < graph.order(); ++a) {
    if (partial[static_cast<std::size_t>(a)] >= 0) continue;
    seen.clear();
    for (const Vertex x : graph.neighbors(a)) {
      if (partial[static_cast<std::size_t>(x)] >= 0) seen.push_back(partial[static_cast<std::size_t>(x)]);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return a;
  }
  return std::nullopt;
}

GreedyResult greedy_homomorphism(const MixedGraph& graph, const MixedGraph& target,
                                 std::vector<Vertex> order) {
  if (!(graph.signature() == target.signature())) {
    throw InputError("greedy_homomorphism: signature mismatch");
  }
  const Vertex n = graph.order();
  GreedyResult result;
  const auto deg = degeneracy_ordering(graph);
  result.degeneracy = deg.degeneracy;
  result.max_degree = graph.max_degree();
  if (order.empty()) {
    order = deg.order;
  } else {
    std::vector<Vertex> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (Vertex i = 0; i < n; ++i) {
      if (static_cast<Vertex>(sorted.size()) != n || sorted[static_cast<std::size_t>(i)] != i) {
        throw InputError("greedy_homomorphism: order is not a permutation");
      }
    }
  }
  result.order = order;

  std::vector<Vertex> image(static_cast<std::size_t>(n), -1);
  for (std::size_t step = 0; step < order.size(); ++step) {
    const Vertex v = order[step];
    GreedyStep s;
    s.vertex = v;
    for (const Vertex x : graph.neighbors(v)) {
      const Vertex fx = image[static_cast<std::size_t>(x)];
      if (fx < 0) continue;
      s.query.tuple.push_back(fx);
      s.query.kinds.push_back(*graph.relation_from(x, v));
    }
    s.candidates = common_neighborhood(target, s.query);
    // Images of mapped vertices that share an unmapped neighbor a with v.
    for (const Vertex a : graph.neighbors(v)) {
      if (image[static_cast<std::size_t>(a)] >= 0) continue;
      for (const Vertex y : graph.neighbors(a)) {
        if (image[static_cast<std::size_t>(y)] >= 0) s.blocked.push_back(image[static_cast<std::size_t>(y)]);
      }
    }
    std::sort(s.blocked.begin(), s.blocked.end());
    s.blocked.erase(std::unique(s.blocked.begin(), s.blocked.end()), s.blocked.end());
    const auto free = set_minus(s.candidates, s.blocked);
    if (free.empty()) {
      result.failure = GreedyFailure{step, s};
      return result;
    }
    s.image = free.front();
    image[static_cast<std::size_t>(v)] = s.image;
    result.trace.push_back(std::move(s));
    if (const auto bad = distinct_images_violation(graph, image)) {
      throw std::logic_error("greedy_homomorphism: distinct-images invariant broken at vertex " +
                             std::to_string(*bad));
    }
  }
  Homomorphism hom{n, target.order(), std::move(image)};
  if (const auto bad = check_homomorphism(graph, target, hom.map)) {
    throw std::logic_error("greedy_homomorphism: result is not a homomorphism: " + to_string(*bad));
  }
  result.hom = std::move(hom);
  return result;
}

RegularExtension extend_regular(const MixedGraph& graph, const MixedGraph& target) {
  const Vertex n = graph.order();
  if (n < 2 || graph.relation_count() == 0) throw InputError("extend_regular: graph has no edge");
  const int delta = graph.degree(0);
  for (Vertex v = 0; v < n; ++v) {
    if (graph.degree(v) != delta) throw InputError("extend_regular: graph is not regular");
  }
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::vector<Vertex> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Vertex x : graph.neighbors(v)) {
      if (!reached[static_cast<std::size_t>(x)]) {
        reached[static_cast<std::size_t>(x)] = true;
        stack.push_back(x);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    throw InputError("extend_regular: graph is not connected");
  }

  RegularExtension out;
  const Relation first = graph.relations().front();
  const Vertex u = first.u;
  const Vertex v = first.v;
  out.removed_u = u;
  out.removed_v = v;
  MixedGraph rest = graph;
  rest.remove_relation(u, v);
  auto greedy = greedy_homomorphism(rest, target);
  if (!greedy.hom) {
    out.failure = std::move(greedy.failure);
    return out;
  }
  const auto& f = greedy.hom->map;

  const Vertex c = target.order();
  const Vertex u2 = c;
  const Vertex v2 = c + 1;
  MixedGraph plus(target.signature(), c + 2);
  for (const auto& r : target.relations()) plus.add_relation(r.u, r.v, r.kind);
  auto demand = [&](Vertex fresh, Vertex original, Vertex skip) {
    for (const Vertex x : graph.neighbors(original)) {
      if (x == skip) continue;
      const Vertex fx = f[static_cast<std::size_t>(x)];
      const int kind = graph.kind_index(original, x);
      const int have = plus.kind_index(fresh, fx);
      if (have < 0) {
        plus.add_relation_index(fresh, fx, kind);
      } else if (have != kind) {
        throw std::logic_error("extend_regular: conflicting demands on a new target vertex");
      }
    }
  };
  demand(u2, u, v);
  demand(v2, v, u);
  plus.add_relation_index(u2, v2, graph.kind_index(u, v));
  for (const Vertex fresh : {u2, v2}) {
    for (Vertex z = 0; z < c; ++z) {
      if (!plus.adjacent(fresh, z)) plus.add_relation_index(fresh, z, 0);
    }
  }

  Homomorphism hom{n, c + 2, f};
  hom.map[static_cast<std::size_t>(u)] = u2;
  hom.map[static_cast<std::size_t>(v)] = v2;
  if (const auto bad = check_homomorphism(graph, plus, hom.map)) {
    throw std::logic_error("extend_regular: result is not a homomorphism: " + to_string(*bad));
  }
  out.target = std::move(plus);
  out.hom = std::move(hom);
  return out;
}

} // namespace cmg
