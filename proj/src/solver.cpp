#include "cmg/solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

namespace cmg {

std::string to_string(const HomViolation& v) {
  std::ostringstream os;
  os << "pair (" << v.u << ", " << v.v << "): " << v.reason;
  return os.str();
}

std::optional<HomViolation> check_homomorphism(const MixedGraph& source, const MixedGraph& target,
                                               std::span<const Vertex> map) {
  if (!(source.signature() == target.signature())) {
    throw InputError("homomorphism: signature mismatch " + to_string(source.signature()) +
                     " vs " + to_string(target.signature()));
  }
  if (map.size() != static_cast<std::size_t>(source.order())) {
    throw InputError("homomorphism: map has " + std::to_string(map.size()) +
                     " entries, source has " + std::to_string(source.order()) + " vertices");
  }
  for (Vertex x : map) target.check_vertex(x);

  for (const auto& r : source.relations()) {
    const Vertex fu = map[static_cast<std::size_t>(r.u)];
    const Vertex fv = map[static_cast<std::size_t>(r.v)];
    if (fu == fv) return HomViolation{r.u, r.v, "endpoints share image " + std::to_string(fu)};
    const int want = r.kind.index(source.signature());
    const int got = target.kind_index(fu, fv);
    if (got < 0) {
      return HomViolation{r.u, r.v,
                          "images " + std::to_string(fu) + ", " + std::to_string(fv) +
                              " are non-adjacent"};
    }
    if (got != want) {
      return HomViolation{r.u, r.v,
                          "expected " + to_string(r.kind) + ", target has " +
                              to_string(RelationKind::from_index(target.signature(), got))};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Homomorphism search

namespace {

class HomSearch {
public:
  HomSearch(const MixedGraph& src, const MixedGraph& tgt, std::uint64_t budget)
      : src_(src), tgt_(tgt), budget_(budget),
        image_(static_cast<std::size_t>(src.order()), -1) {}

  HomSearchResult run() {
    HomSearchResult result;
    if (src_.order() > 0 && tgt_.order() == 0) return result;
    const bool found = search(0);
    result.nodes = nodes_;
    if (found) {
      result.hom = Homomorphism{src_.order(), tgt_.order(), image_};
    } else if (out_of_budget_) {
      result.status = SearchStatus::UnknownInBudget;
    }
    return result;
  }

private:
  void candidates(Vertex v, std::vector<Vertex>& out) const {
    out.clear();
    Vertex anchor = -1;
    for (Vertex u : src_.neighbors(v)) {
      if (image_[static_cast<std::size_t>(u)] >= 0) {
        anchor = u;
        break;
      }
    }
    if (anchor < 0) {
      out.resize(static_cast<std::size_t>(tgt_.order()));
      std::iota(out.begin(), out.end(), 0);
      return;
    }
    // x must satisfy relation_from(f(u), x) == relation_from(u, v) for every
    // mapped neighbor u.
    const Vertex fa = image_[static_cast<std::size_t>(anchor)];
    for (Vertex x : tgt_.neighbors(fa)) {
      bool ok = true;
      for (Vertex u : src_.neighbors(v)) {
        const Vertex fu = image_[static_cast<std::size_t>(u)];
        if (fu < 0) continue;
        if (tgt_.kind_index(fu, x) != src_.kind_index(u, v)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(x);
    }
  }

  bool search(Vertex mapped) {
    if (mapped == src_.order()) return true;
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    Vertex best = -1;
    std::vector<Vertex> best_cands;
    std::vector<Vertex> cands;
    for (Vertex v = 0; v < src_.order(); ++v) {
      if (image_[static_cast<std::size_t>(v)] >= 0) continue;
      candidates(v, cands);
      if (best < 0 || cands.size() < best_cands.size()) {
        best = v;
        best_cands.swap(cands);
        if (best_cands.empty()) return false;
      }
    }
    for (Vertex x : best_cands) {
      image_[static_cast<std::size_t>(best)] = x;
      if (search(mapped + 1)) return true;
      image_[static_cast<std::size_t>(best)] = -1;
      if (out_of_budget_) return false;
    }
    return false;
  }

  const MixedGraph& src_;
  const MixedGraph& tgt_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<Vertex> image_;
};

} // namespace

HomSearchResult find_homomorphism(const MixedGraph& source, const MixedGraph& target,
                                  std::uint64_t node_budget) {
  if (!(source.signature() == target.signature())) {
    throw InputError("homomorphism: signature mismatch " + to_string(source.signature()) +
                     " vs " + to_string(target.signature()));
  }
  return HomSearch(source, target, node_budget).run();
}

// ---------------------------------------------------------------------------
// Partitions

std::optional<Violation> check_partition(const MixedGraph& graph,
                                         const ColorClassPartition& partition) {
  const Vertex n = graph.order();
  if (partition.block_of.size() != static_cast<std::size_t>(n)) {
    return Violation{"partition size", -1, -1, "partition does not cover the vertex set", 0};
  }
  std::vector<bool> used(static_cast<std::size_t>(std::max(partition.block_count, 0)), false);
  for (Vertex v = 0; v < n; ++v) {
    const int b = partition.block_of[static_cast<std::size_t>(v)];
    if (b < 0 || b >= partition.block_count) {
      return Violation{"block out of range", v, -1, "block " + std::to_string(b), 0};
    }
    used[static_cast<std::size_t>(b)] = true;
  }
  for (std::size_t b = 0; b < used.size(); ++b) {
    if (!used[b]) return Violation{"empty block", -1, -1, "block " + std::to_string(b), 0};
  }
  const auto k = static_cast<std::size_t>(partition.block_count);
  std::vector<int> kind(k * k, -1);
  std::vector<std::pair<Vertex, Vertex>> first(k * k, {-1, -1});
  for (const auto& r : graph.relations()) {
    const auto bu = static_cast<std::size_t>(partition.block_of[static_cast<std::size_t>(r.u)]);
    const auto bv = static_cast<std::size_t>(partition.block_of[static_cast<std::size_t>(r.v)]);
    if (bu == bv) {
      return Violation{"block not independent", r.u, r.v, "block " + std::to_string(bu), 0};
    }
    const int kk = graph.kind_index(r.u, r.v);
    auto& slot = kind[bu * k + bv];
    if (slot < 0) {
      slot = kk;
      kind[bv * k + bu] = dual_index(graph.signature(), kk);
      first[bu * k + bv] = {r.u, r.v};
      first[bv * k + bu] = {r.v, r.u};
    } else if (slot != kk) {
      const auto [fu, fv] = first[bu * k + bv];
      return Violation{"mixed relations between blocks", r.u, r.v,
                       "blocks " + std::to_string(bu) + "," + std::to_string(bv) +
                           " already joined by (" + std::to_string(fu) + ", " +
                           std::to_string(fv) + ")",
                       0};
    }
  }
  return std::nullopt;
}

ColorClassPartition partition_from_labels(std::span<const int> labels) {
  ColorClassPartition out;
  out.block_of.resize(labels.size());
  std::vector<std::pair<int, int>> seen; // label -> block
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& e) { return e.first == labels[v]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[v], out.block_count++);
      out.block_of[v] = out.block_count - 1;
    } else {
      out.block_of[v] = it->second;
    }
  }
  return out;
}

MixedGraph quotient(const MixedGraph& graph, const ColorClassPartition& partition) {
  if (auto violation = check_partition(graph, partition)) {
    throw InputError("quotient: " + to_string(*violation));
  }
  MixedGraph image(graph.signature(), partition.block_count);
  for (const auto& r : graph.relations()) {
    const Vertex bu = partition.block_of[static_cast<std::size_t>(r.u)];
    const Vertex bv = partition.block_of[static_cast<std::size_t>(r.v)];
    if (!image.adjacent(bu, bv)) image.add_relation(bu, bv, r.kind);
  }
  return image;
}

// ---------------------------------------------------------------------------
// Special clique

std::vector<Vertex> special_clique(const MixedGraph& graph) {
  const auto n = static_cast<std::size_t>(graph.order());
  if (n == 0) return {};
  std::vector<boost::dynamic_bitset<>> partners(n, boost::dynamic_bitset<>(n));
  for (const auto& [u, w] : special_pairs(graph)) {
    partners[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(w));
    partners[static_cast<std::size_t>(w)].set(static_cast<std::size_t>(u));
  }

  std::vector<std::size_t> starts(n);
  std::iota(starts.begin(), starts.end(), 0);
  constexpr std::size_t kMaxStarts = 256;
  if (n > kMaxStarts) {
    std::stable_sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) {
      return partners[a].count() > partners[b].count();
    });
    starts.resize(kMaxStarts);
  }

  std::vector<Vertex> best;
  for (std::size_t s : starts) {
    if (partners[s].count() + 1 <= best.size()) continue;
    std::vector<Vertex> clique{static_cast<Vertex>(s)};
    auto cand = partners[s];
    while (cand.any()) {
      std::size_t pick = cand.find_first();
      std::size_t pick_score = (partners[pick] & cand).count();
      for (auto c = cand.find_next(pick); c != boost::dynamic_bitset<>::npos;
           c = cand.find_next(c)) {
        const auto score = (partners[c] & cand).count();
        if (score > pick_score) {
          pick = c;
          pick_score = score;
        }
      }
      clique.push_back(static_cast<Vertex>(pick));
      cand &= partners[pick];
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  std::sort(best.begin(), best.end());
  return best;
}

// ---------------------------------------------------------------------------
// Chromatic number

namespace {

// Branch and bound over vertex -> block assignments. pair_kind_[b*cap+c]
// holds the kind index every relation from block b toward block c must
// have, or -1 while no relation joins them.
class PartitionSearch {
public:
  PartitionSearch(const MixedGraph& g, std::uint64_t budget)
      : g_(g), n_(static_cast<std::size_t>(g.order())), cap_(n_), budget_(budget),
        block_of_(n_, -1), pair_kind_(cap_ * cap_, -1), scratch_(cap_, -1) {}

  // Searches for partitions with fewer than `cutoff` blocks, seeding the
  // clique into blocks 0..|clique|-1.
  void run(int cutoff, int lower, std::span<const Vertex> clique) {
    best_ = cutoff;
    lower_ = lower;
    std::fill(block_of_.begin(), block_of_.end(), -1);
    std::fill(pair_kind_.begin(), pair_kind_.end(), -1);
    trail_.clear();
    used_ = 0;
    assigned_ = 0;
    found_ = false;
    for (Vertex v : clique) {
      if (used_ + 1 >= best_) return;
      if (!assign(v, used_)) return;
      ++used_;
    }
    search();
  }

  bool found() const noexcept { return found_; }
  bool out_of_budget() const noexcept { return out_of_budget_; }
  int best() const noexcept { return best_; }
  const std::vector<int>& best_blocks() const noexcept { return best_blocks_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

private:
  bool assign(Vertex v, int b) {
    const auto bb = static_cast<std::size_t>(b);
    const std::size_t mark = trail_.size();
    for (Vertex u : g_.neighbors(v)) {
      const int c = block_of_[static_cast<std::size_t>(u)];
      if (c < 0) continue;
      if (c == b) return rollback(mark);
      const int k = g_.kind_index(v, u);
      const auto idx = bb * cap_ + static_cast<std::size_t>(c);
      if (pair_kind_[idx] < 0) {
        pair_kind_[idx] = k;
        pair_kind_[static_cast<std::size_t>(c) * cap_ + bb] = dual_index(g_.signature(), k);
        trail_.push_back(idx);
      } else if (pair_kind_[idx] != k) {
        return rollback(mark);
      }
    }
    block_of_[static_cast<std::size_t>(v)] = b;
    ++assigned_;
    marks_.push_back(mark);
    return true;
  }

  bool rollback(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto idx = trail_.back();
      trail_.pop_back();
      pair_kind_[idx] = -1;
      pair_kind_[(idx % cap_) * cap_ + idx / cap_] = -1;
    }
    return false;
  }

  void unassign(Vertex v) {
    rollback(marks_.back());
    marks_.pop_back();
    block_of_[static_cast<std::size_t>(v)] = -1;
    --assigned_;
  }

  // Could w join existing block b without breaking an invariant?
  bool feasible(Vertex w, int b) {
    bool ok = true;
    std::vector<int> touched;
    for (Vertex u : g_.neighbors(w)) {
      const int c = block_of_[static_cast<std::size_t>(u)];
      if (c < 0) continue;
      const int k = g_.kind_index(w, u);
      const int fixed = pair_kind_[static_cast<std::size_t>(b) * cap_ + static_cast<std::size_t>(c)];
      auto& seen = scratch_[static_cast<std::size_t>(c)];
      if (c == b || (fixed >= 0 && fixed != k) || (seen >= 0 && seen != k)) {
        ok = false;
        break;
      }
      if (seen < 0) touched.push_back(c);
      seen = k;
    }
    for (int c : touched) scratch_[static_cast<std::size_t>(c)] = -1;
    return ok;
  }

  Vertex select() const {
    Vertex pick = -1;
    int pick_sat = -1;
    int pick_deg = -1;
    std::vector<bool> blocks(cap_, false);
    for (Vertex v = 0; v < static_cast<Vertex>(n_); ++v) {
      if (block_of_[static_cast<std::size_t>(v)] >= 0) continue;
      int sat = 0;
      std::vector<int> hit;
      for (Vertex u : g_.neighbors(v)) {
        const int c = block_of_[static_cast<std::size_t>(u)];
        if (c >= 0 && !blocks[static_cast<std::size_t>(c)]) {
          blocks[static_cast<std::size_t>(c)] = true;
          hit.push_back(c);
          ++sat;
        }
      }
      for (int c : hit) blocks[static_cast<std::size_t>(c)] = false;
      const int deg = g_.degree(v);
      if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
        pick = v;
        pick_sat = sat;
        pick_deg = deg;
      }
    }
    return pick;
  }

  // With no room for a new block, every unassigned vertex needs an
  // existing block it can still join.
  bool forward_check() {
    if (used_ + 1 < best_) return true;
    for (Vertex w = 0; w < static_cast<Vertex>(n_); ++w) {
      if (block_of_[static_cast<std::size_t>(w)] >= 0) continue;
      bool any = false;
      for (int b = 0; b < used_ && !any; ++b) any = feasible(w, b);
      if (!any) return false;
    }
    return true;
  }

  // Returns true when the search should stop.
  bool search() {
    if (assigned_ == n_) {
      best_ = used_;
      best_blocks_ = block_of_;
      found_ = true;
      return best_ <= lower_;
    }
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return true;
    }
    if (!forward_check()) return false;
    const Vertex v = select();
    for (int b = 0; b < used_; ++b) {
      if (!assign(v, b)) continue;
      const bool stop = search();
      unassign(v);
      if (stop) return true;
      if (used_ >= best_) return false;
    }
    if (used_ + 1 < best_) {
      if (assign(v, used_)) {
        ++used_;
        const bool stop = search();
        --used_;
        unassign(v);
        if (stop) return true;
      }
    }
    return false;
  }

  const MixedGraph& g_;
  std::size_t n_;
  std::size_t cap_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  bool found_ = false;
  int best_ = 0;
  int lower_ = 0;
  int used_ = 0;
  std::size_t assigned_ = 0;
  std::vector<int> block_of_;
  std::vector<int> pair_kind_;
  std::vector<int> scratch_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> marks_;
  std::vector<int> best_blocks_;
};

} // namespace

ChromaticResult chromatic_number(const MixedGraph& graph, const ChromaticOptions& options) {
  ChromaticResult result;
  const int n = graph.order();
  if (n == 0) return result;

  result.clique = special_clique(graph);
  int lower = std::max({options.lower_hint, static_cast<int>(result.clique.size()), 1});
  lower = std::min(lower, n);

  // The discrete partition is always valid.
  result.witness.block_of.resize(static_cast<std::size_t>(n));
  std::iota(result.witness.block_of.begin(), result.witness.block_of.end(), 0);
  result.witness.block_count = n;
  result.upper = n;

  PartitionSearch search(graph, options.node_budget);
  int cutoff = n;
  if (options.upper_hint > 0 && options.upper_hint < n) cutoff = std::max(options.upper_hint + 1, lower);
  while (true) {
    if (lower >= result.upper) break;
    search.run(cutoff, lower, result.clique);
    if (search.found()) {
      result.upper = search.best();
      result.witness = partition_from_labels(search.best_blocks());
    }
    if (search.out_of_budget()) {
      result.status = SearchStatus::UnknownInBudget;
      break;
    }
    if (search.found() || cutoff >= result.upper) {
      lower = result.upper;
      break;
    }
    // Nothing below the hinted cutoff: chi > upper_hint.
    lower = std::max(lower, cutoff);
    cutoff = result.upper;
  }
  result.lower = lower;
  result.nodes = search.nodes();
  return result;
}

} // namespace cmg
