#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "margulis/error.hpp"

namespace margulis {

/// 256-bit binary floating point used by the extended-precision mode.
using Extended = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

enum class Precision { standard, extended };

inline Precision parse_precision(std::string_view s) {
  if (s == "double" || s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw DomainError("unknown precision mode '" + std::string(s) + "' (expected double or extended)");
}

inline const char* to_string(Precision p) {
  return p == Precision::standard ? "double" : "extended";
}

namespace detail {

template <class Real>
inline constexpr bool is_extended_v = std::numeric_limits<Real>::digits > 64;

template <class Real>
Real pi() {
  if constexpr (is_extended_v<Real>) {
    return boost::math::constants::pi<Real>();
  } else {
    return std::numbers::pi_v<Real>;
  }
}

template <class Real>
Real log1p_generic(const Real& y) {
  using std::log;
  using std::log1p;
  if constexpr (is_extended_v<Real>) {
    // 256 bits leaves ample headroom for the cancellation in 1 + y.
    return log(Real(1) + y);
  } else {
    return log1p(y);
  }
}

// Taylor tail of sinh: x^3/3! + x^5/5! + ...
template <class Real>
Real sinh_minus_x_series(const Real& x) {
  const Real x2 = x * x;
  Real term = x * x2 / 6;
  Real sum = term;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int k = 2; k < 200; ++k) {
    term *= x2 / Real((2 * k) * (2 * k + 1));
    sum += term;
    if (term <= eps * sum) break;
  }
  return sum;
}

}  // namespace detail

/// sinh(x) - x for x >= 0 without cancellation at small x.
template <class Real>
Real sinh_minus_x(const Real& x) {
  using std::sinh;
  if constexpr (detail::is_extended_v<Real>) {
    if (x < Real(1e-6)) return detail::sinh_minus_x_series(x);
  } else {
    if (x < Real(1)) return detail::sinh_minus_x_series(x);
  }
  return sinh(x) - x;
}

/// log(sinh(x) - x) for x > 0, finite for arguments far beyond the overflow
/// point of sinh.
template <class Real>
Real log_sinh_minus_x(const Real& x) {
  using std::exp;
  using std::log;
  if (x < Real(1)) return log(sinh_minus_x(x));
  // sinh x - x = (e^x / 2) (1 - e^{-2x} - 2x e^{-x})
  const Real e = exp(-x);
  return x - log(Real(2)) + detail::log1p_generic(-(e * e) - 2 * x * e);
}

}  // namespace margulis
