#pragma once

// Explicit volume, index and rank bounds for hyperbolic 3-manifolds whose
// optimal Margulis number is below lambda.
//
// N(lambda) is the least N >= 1 with
//
//     (3^N - 1) / (4N + 1) >= K (sinh(2N lambda + mu) - (2N lambda + mu)),
//
// K = 2667, mu = 0.104. Everything else is a closed form in N(lambda) or in
// beta = 1 / (log 3 - 2 lambda).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "margulis/error.hpp"
#include "margulis/numeric.hpp"

namespace margulis::bounds {

inline const double kLog3 = std::log(3.0);
/// Supremum of admissible lambda: (log 3) / 2.
inline const double kLambdaMax = 0.5 * std::log(3.0);
/// Lower end of the closed-form estimates (strict).
inline constexpr double kClosedFormLambdaMin = 0.1;
/// Hard ceiling on the N(lambda) scan.
inline constexpr std::uint64_t kScanLimit = std::uint64_t{1} << 32;

struct BoundParams {
  double lambda = 0.0;
  double mu = 0.104;
  double packing_constant = 2667.0;
  /// Volume of the Weeks manifold. Only "0.94..." is given with the bound; the
  /// remaining digits are the known value, kept configurable.
  double weeks_volume = 0.9427073628;

  static BoundParams with_lambda(double lambda) {
    BoundParams p;
    p.lambda = lambda;
    return p;
  }
};

/// 0 < lambda < (log 3)/2 and 0 < mu, plus positive constants.
inline void validate(const BoundParams& p) {
  if (!(p.lambda > 0.0 && p.lambda < kLambdaMax)) {
    throw DomainError("lambda must lie in the open interval (0, (log 3)/2) = (0, 0.549306...); got " +
                      std::to_string(p.lambda) +
                      " -- at or beyond (log 3)/2 the defining inequality is never eventually satisfied");
  }
  if (!(p.mu > 0.0) || !std::isfinite(p.mu)) throw DomainError("mu must be positive");
  if (!(p.packing_constant > 0.0) || !std::isfinite(p.packing_constant)) {
    throw DomainError("packing constant must be positive");
  }
  if (!(p.weeks_volume > 0.0) || !std::isfinite(p.weeks_volume)) {
    throw DomainError("Weeks volume V0 must be positive");
  }
}

/// The closed-form estimates require lambda in (0.1, (log 3)/2).
inline void validate_closed_form(const BoundParams& p) {
  validate(p);
  if (!(p.lambda > kClosedFormLambdaMin)) {
    throw DomainError("closed-form estimate requires lambda > 0.1 (it uses beta > 1.11); got " +
                      std::to_string(p.lambda));
  }
}

/// log((3^N - 1)/(4N + 1)) - log(K (sinh x - x)), x = 2N lambda + mu.
/// Nonnegative exactly when N satisfies the defining inequality.
template <class Real = double>
Real margulis_gap(std::uint64_t n, const BoundParams& p) {
  using std::log;
  if (n == 0) throw DomainError("N must be a positive integer");
  const Real nn = Real(n);
  const Real log3 = log(Real(3));
  Real log_pow3_minus_1;
  if constexpr (detail::is_extended_v<Real>) {
    // 3^-N underflows only beyond the extended exponent range.
    using std::exp;
    log_pow3_minus_1 = nn * log3 + detail::log1p_generic(Real(-exp(-nn * log3)));
  } else {
    log_pow3_minus_1 = nn * log3 + std::log1p(-std::exp(-nn * log3));
  }
  const Real log_lhs = log_pow3_minus_1 - log(Real(4) * nn + 1);
  const Real x = Real(2) * nn * Real(p.lambda) + Real(p.mu);
  const Real log_rhs = log(Real(p.packing_constant)) + log_sinh_minus_x(x);
  return log_lhs - log_rhs;
}

namespace detail {

inline std::uint64_t scan_standard(const BoundParams& p) {
  for (std::uint64_t n = 1; n <= kScanLimit; ++n) {
    if (margulis_gap<double>(n, p) >= 0.0) return n;
  }
  throw DomainError("N(lambda) exceeds the scan limit; lambda is too close to (log 3)/2");
}

// Direct comparison (3^N - 1) >= (4N + 1) K (sinh x - x) in 256-bit
// arithmetic, with 3^N and e^{+-x} advanced by one multiplication per step.
inline std::uint64_t scan_extended(const BoundParams& p) {
  using margulis::Extended;
  const Extended three(3);
  const Extended lambda(p.lambda);
  const Extended mu(p.mu);
  const Extended k(p.packing_constant);
  const Extended step = exp(Extended(2) * lambda);
  const Extended step_inv = 1 / step;
  Extended pow3 = three;
  Extended ex = exp(Extended(2) * lambda + mu);
  Extended ex_inv = 1 / ex;
  for (std::uint64_t n = 1; n <= kScanLimit; ++n) {
    const Extended x = Extended(2 * n) * lambda + mu;
    Extended tail;
    if (x < Extended(0.5)) {
      tail = margulis::detail::sinh_minus_x_series(x);
    } else {
      tail = (ex - ex_inv) / 2 - x;
    }
    if (pow3 - 1 >= Extended(4 * n + 1) * k * tail) return n;
    pow3 *= three;
    ex *= step;
    ex_inv *= step_inv;
  }
  throw DomainError("N(lambda) exceeds the scan limit; lambda is too close to (log 3)/2");
}

}  // namespace detail

/// N(lambda) by linear scan from N = 1. The result is re-checked against
/// margulis_gap in the same precision.
inline std::uint64_t compute_N(const BoundParams& p, Precision precision = Precision::standard) {
  validate(p);
  std::uint64_t n = 0;
  bool ok = false;
  if (precision == Precision::standard) {
    n = detail::scan_standard(p);
    ok = margulis_gap<double>(n, p) >= 0.0 && (n == 1 || margulis_gap<double>(n - 1, p) < 0.0);
  } else {
    n = detail::scan_extended(p);
    ok = margulis_gap<Extended>(n, p) >= 0 && (n == 1 || margulis_gap<Extended>(n - 1, p) < 0);
  }
  if (!ok) {
    throw InconsistencyError("N(lambda) scan disagrees with the log-domain gap at N = " +
                             std::to_string(n));
  }
  return n;
}

/// beta = 1 / (log 3 - 2 lambda).
inline double beta(const BoundParams& p) {
  validate(p);
  return 1.0 / (kLog3 - 2.0 * p.lambda);
}

/// 1 + 110 beta log beta, an upper bound for N(lambda) on (0.1, (log 3)/2).
inline double nestimate(const BoundParams& p) {
  validate_closed_form(p);
  const double b = beta(p);
  return 1.0 + 110.0 * b * std::log(b);
}

inline double volume_bound_exact(const BoundParams& p, Precision precision = Precision::standard) {
  const auto n = compute_N(p, precision);
  return p.lambda * (8.0 * static_cast<double>(n) - 2.0);
}

/// lambda (6 + 880 beta log beta), the closed form of the volume bound.
inline double volume_bound_closed(const BoundParams& p) {
  validate_closed_form(p);
  const double b = beta(p);
  return p.lambda * (6.0 + 880.0 * b * std::log(b));
}

inline double index_bound(const BoundParams& p, Precision precision = Precision::standard) {
  return volume_bound_exact(p, precision) / p.weeks_volume;
}

/// 2 + log2(index). An index below 1 carries no information (rank <= 2 anyway).
inline double rank_bound_from_index(double index) {
  if (index < 1.0) {
    throw VacuousBound("rank bound vacuous: index bound " + std::to_string(index) +
                       " < 1, so the rank <= 2 statement already holds");
  }
  return 2.0 + std::log2(index);
}

inline double rank_bound(const BoundParams& p, Precision precision = Precision::standard) {
  return rank_bound_from_index(index_bound(p, precision));
}

/// rank(G) <= rank(H) + log2 [G : H].
inline double rank_from_index(std::uint64_t subgroup_rank, std::uint64_t index) {
  if (subgroup_rank == 0) throw DomainError("subgroup rank must be positive");
  if (index == 0) throw DomainError("index must be at least 1");
  return static_cast<double>(subgroup_rank) + std::log2(static_cast<double>(index));
}

/// (length - 2) min(pi, lambda): the volume bound carried by a relation of
/// the given length among generators displacing a point less than lambda.
inline double volume_from_relation(std::uint64_t relation_length, double lambda) {
  if (relation_length < 4) {
    throw DomainError("relation length must be at least 4: a shortest relation between "
                      "non-commuting generators cannot be shorter");
  }
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  return static_cast<double>(relation_length - 2) * std::min(std::numbers::pi, lambda);
}

struct BoundsReport {
  double lambda = 0.0;
  std::uint64_t n_of_lambda = 0;
  double beta = 0.0;
  std::optional<double> nestimate;  // only for lambda > 0.1
  std::uint64_t relation_length_bound = 0;
  double volume_exact = 0.0;
  std::optional<double> volume_closed;  // only for lambda > 0.1
  double index_bound = 0.0;
  std::optional<double> rank_bound;  // absent when the index bound is below 1
};

inline BoundsReport full_report(const BoundParams& p, Precision precision = Precision::standard) {
  validate(p);
  BoundsReport r;
  r.lambda = p.lambda;
  r.n_of_lambda = compute_N(p, precision);
  r.beta = beta(p);
  r.relation_length_bound = 8 * r.n_of_lambda;
  r.volume_exact = p.lambda * (8.0 * static_cast<double>(r.n_of_lambda) - 2.0);
  r.index_bound = r.volume_exact / p.weeks_volume;
  if (r.index_bound >= 1.0) r.rank_bound = rank_bound_from_index(r.index_bound);
  if (p.lambda > kClosedFormLambdaMin) {
    r.nestimate = nestimate(p);
    r.volume_closed = volume_bound_closed(p);
  }
  return r;
}

/// Report invariants: N < nestimate and exact <= closed volume above 0.1,
/// plus the arithmetic links between fields.
inline bool is_consistent(const BoundsReport& r, const BoundParams& p) {
  bool ok = r.n_of_lambda >= 1 && r.relation_length_bound == 8 * r.n_of_lambda;
  ok = ok && r.volume_exact == r.lambda * (8.0 * static_cast<double>(r.n_of_lambda) - 2.0);
  ok = ok && r.index_bound == r.volume_exact / p.weeks_volume;
  if (r.nestimate) ok = ok && static_cast<double>(r.n_of_lambda) < *r.nestimate;
  if (r.volume_closed) ok = ok && r.volume_exact <= *r.volume_closed;
  return ok;
}

}  // namespace margulis::bounds
