#pragma once

// Closed-form bounds relating chi_(m,n), acyclic chromatic number,
// arboricity and maximum degree. Every logarithm ceiling is computed by
// integer power comparison; nothing here touches floating point except the
// informational real value of p^(Delta/2).

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmg/core.hpp"

namespace cmg {

using BigInt = boost::multiprecision::cpp_int;

/// A bound whose hypotheses do not hold for the given parameters.
class HypothesisError : public InputError {
public:
  using InputError::InputError;
};

/// min { s >= 0 : base^s >= x } for x >= 1, base >= 2.
int ceil_log(std::uint64_t base, std::uint64_t x);

BigInt int_pow(const BigInt& base, std::uint64_t exponent);

/// k * p^(k-1): chi_(m,n) of any k-acyclic-colorable graph is at most this.
BigInt nr_upper(int k, int p);

/// 5 * p^4, the planar specialization (planar graphs are 5-acyclic-colorable).
BigInt planar_upper(int p);

/// ceil(log_p k + k/2): arboricity of a graph with chi_(m,n) = k.
std::int64_t arb_upper_from_chi(std::int64_t k, int p);

/// k^(ceil(log_p r) + 1): acyclic chromatic number from chi_(m,n) = k and
/// arboricity r.
BigInt acyclic_upper_from_arb(std::int64_t k, std::int64_t r, int p);

/// Which outer logarithm the k^2 + k^(2 + ceil(log log k)) bound uses.
/// BaseP is the form k^2 + k^(2 + ceil(log_p log_p k)); Base2 replaces the
/// outer log_p by log_2.
enum class OuterLog { BaseP, Base2 };

/// min integer s with log_p k <= b^s, where b = p (BaseP) or 2 (Base2).
/// May be negative for large p under Base2.
int ceil_log_log(std::int64_t k, int p, OuterLog outer);

/// k^2 + k^(2 + ceil_log_log(k, p)). Requires k >= 4, p >= 2.
BigInt acyclic_upper_from_chi(std::int64_t k, int p, OuterLog outer = OuterLog::BaseP);

struct DegreeBounds {
  std::optional<BigInt> lower_exact; ///< p^(Delta/2) when Delta is even
  BigInt lower_ceil;                 ///< ceil(sqrt(p^Delta)), always exact
  double lower_real = 0.0;           ///< informational
  std::optional<BigInt> upper;       ///< 2(Delta-1)^p p^(Delta-1) + 2, Delta >= 5 only
  std::string upper_reason;          ///< why `upper` is absent
};

/// Bounds on chi_(m,n) over graphs of maximum degree Delta. Requires p >= 2.
DegreeBounds degree_bounds(int delta, int p);

struct BoundReport {
  std::string name;
  bool hypotheses_hold = true;
  std::string reason;
  std::optional<BigInt> value;
  std::optional<BigInt> compared;
  std::optional<bool> satisfied;
};

/// Counting audit p^C(k,2) * k^v >= p^e for a graph with chi_(m,n) = k:
/// `value` is the left side, `compared` the right side.
BoundReport counting_inequality_check(const MixedGraph& graph, std::int64_t k);

} // namespace cmg
