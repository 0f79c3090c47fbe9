#include "cmg/bounds.hpp"

#include <cmath>

namespace cmg {

int ceil_log(std::uint64_t base, std::uint64_t x) {
  if (base < 2) throw InputError("ceil_log: base must be >= 2");
  if (x < 1) throw InputError("ceil_log: argument must be >= 1");
  // Number of base-digits of x-1, which is 0 for x = 1.
  int digits = 0;
  for (std::uint64_t rest = x - 1; rest > 0; rest /= base) ++digits;
  return digits;
}

BigInt int_pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt factor = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= factor;
    exponent >>= 1U;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

BigInt nr_upper(int k, int p) {
  if (k < 1 || p < 1) throw InputError("nr_upper: requires k >= 1, p >= 1");
  return BigInt(k) * int_pow(BigInt(p), static_cast<std::uint64_t>(k - 1));
}

BigInt planar_upper(int p) {
  if (p < 1) throw InputError("planar_upper: requires p >= 1");
  return 5 * int_pow(BigInt(p), 4);
}

std::int64_t arb_upper_from_chi(std::int64_t k, int p) {
  if (p < 2) throw HypothesisError("arb_upper_from_chi: requires p >= 2");
  if (k < 1) throw InputError("arb_upper_from_chi: requires k >= 1");
  if (k > 3'000'000'000LL) throw InputError("arb_upper_from_chi: k too large");
  const auto base = static_cast<std::uint64_t>(p);
  const std::int64_t half = k / 2;
  if (k % 2 == 0) return half + ceil_log(base, static_cast<std::uint64_t>(k));
  // log_p k <= s - 1/2  <=>  p^(2s-1) >= k^2.
  const auto k2 = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
  const int c = ceil_log(base, k2);
  const std::int64_t s = std::max<std::int64_t>(1, (c + 2) / 2);
  return half + s;
}

BigInt acyclic_upper_from_arb(std::int64_t k, std::int64_t r, int p) {
  if (p < 2) throw HypothesisError("acyclic_upper_from_arb: requires p >= 2");
  if (k < 1 || r < 1) throw InputError("acyclic_upper_from_arb: requires k >= 1, r >= 1");
  const int s = ceil_log(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(r));
  return int_pow(BigInt(k), static_cast<std::uint64_t>(s) + 1);
}

int ceil_log_log(std::int64_t k, int p, OuterLog outer) {
  if (p < 2) throw HypothesisError("ceil_log_log: requires p >= 2");
  if (k < 2) throw InputError("ceil_log_log: requires k >= 2");
  const BigInt bk(k);
  const BigInt bp(p);
  const std::uint64_t b = outer == OuterLog::BaseP ? static_cast<std::uint64_t>(p) : 2U;
  // For s >= 0: log_p k <= b^s  <=>  k <= p^(b^s).
  // For s <  0: log_p k <= b^s  <=>  k^(b^-s) <= p.
  auto holds = [&](int s) {
    if (s >= 0) {
      std::uint64_t e = 1;
      for (int i = 0; i < s; ++i) e *= b;
      return bk <= int_pow(bp, e);
    }
    std::uint64_t e = 1;
    for (int i = 0; i < -s; ++i) {
      e *= b;
      if (e > 64) return false; // k >= 2 makes k^e exceed any int p
    }
    return int_pow(bk, e) <= bp;
  };
  int s = 0;
  if (holds(0)) {
    while (holds(s - 1)) --s;
  } else {
    while (!holds(s)) ++s;
  }
  return s;
}

BigInt acyclic_upper_from_chi(std::int64_t k, int p, OuterLog outer) {
  if (k < 4) throw HypothesisError("acyclic_upper_from_chi: requires k >= 4");
  if (p < 2) throw HypothesisError("acyclic_upper_from_chi: requires p >= 2");
  const int exponent = 2 + ceil_log_log(k, p, outer);
  if (exponent < 0) {
    throw HypothesisError("acyclic_upper_from_chi: exponent is negative for this p");
  }
  const BigInt bk(k);
  return bk * bk + int_pow(bk, static_cast<std::uint64_t>(exponent));
}

DegreeBounds degree_bounds(int delta, int p) {
  if (p < 2) throw HypothesisError("degree_bounds: requires p >= 2");
  if (delta < 1) throw InputError("degree_bounds: requires Delta >= 1");
  DegreeBounds out;
  const BigInt full = int_pow(BigInt(p), static_cast<std::uint64_t>(delta));
  BigInt root = boost::multiprecision::sqrt(full);
  if (root * root < full) ++root;
  out.lower_ceil = root;
  if (delta % 2 == 0) out.lower_exact = int_pow(BigInt(p), static_cast<std::uint64_t>(delta / 2));
  out.lower_real = std::pow(static_cast<double>(p), delta / 2.0);
  if (delta >= 5) {
    out.upper = 2 * int_pow(BigInt(delta - 1), static_cast<std::uint64_t>(p)) *
                    int_pow(BigInt(p), static_cast<std::uint64_t>(delta - 1)) +
                2;
  } else {
    out.upper_reason = "upper bound requires Delta >= 5";
  }
  return out;
}

BoundReport counting_inequality_check(const MixedGraph& graph, std::int64_t k) {
  BoundReport report;
  report.name = "counting";
  const int p = graph.signature().p();
  if (k < 1 && graph.order() > 0) {
    report.hypotheses_hold = false;
    report.reason = "k must be >= 1 for a non-empty graph";
    return report;
  }
  const auto pairs = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k > 0 ? k - 1 : 0) / 2;
  report.value = int_pow(BigInt(p), pairs) *
                 int_pow(BigInt(k), static_cast<std::uint64_t>(graph.order()));
  report.compared = int_pow(BigInt(p), graph.relation_count());
  report.satisfied = *report.value >= *report.compared;
  return report;
}

} // namespace cmg
