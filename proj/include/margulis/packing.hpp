#pragma once

// The counting-versus-packing chain behind the short-relation bound, and a
// search for the relation itself over concrete generator matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "margulis/bounds.hpp"
#include "margulis/error.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/hypgeom.hpp"
#include "margulis/numeric.hpp"

namespace margulis::packing {

using freegroup::Letter;
using freegroup::ReducedWord;
using hypgeom::Complex;
using hypgeom::Isometry;
using hypgeom::Point;

struct GeneratorPair {
  Isometry x;
  Isometry y;
  Point basepoint{Complex(0.0, 0.0), 1.0};
};

/// Largest N for which the coset bound is evaluated from exact integers.
inline constexpr std::uint64_t kExactCosetLimit = 40;

/// log(2(3^N - 1)/(4N + 1)) with the numerator as an exact integer.
inline double coset_lower_bound_exact(std::uint64_t n) {
  using boost::multiprecision::cpp_int;
  if (n == 0) throw DomainError("N must be a positive integer");
  cpp_int num = 1;
  for (std::uint64_t i = 0; i < n; ++i) num *= 3;
  num = 2 * (num - 1);
  const Extended ratio = Extended(num) / Extended(4 * n + 1);
  return static_cast<double>(log(ratio));
}

/// N log 3 + log 2 - log(4N + 1) + log1p(-3^-N).
inline double coset_lower_bound_log(std::uint64_t n) {
  if (n == 0) throw DomainError("N must be a positive integer");
  const double nn = static_cast<double>(n);
  return nn * std::log(3.0) + std::log(2.0) - std::log(4.0 * nn + 1.0) +
         std::log1p(-std::exp(-nn * std::log(3.0)));
}

/// Log of the lower bound on the number of distinct cosets hit by V_N.
inline double coset_lower_bound(std::uint64_t n) {
  return n <= kExactCosetLimit ? coset_lower_bound_exact(n) : coset_lower_bound_log(n);
}

struct PackingReport {
  std::uint64_t n = 0;
  double coset_lower = 0.0;   // log 2(3^N - 1)/(4N + 1)
  double volume_ratio = 0.0;  // log vol B(N lambda + mu/2) / vol b(mu/2)
  double margin = 0.0;        // coset_lower - volume_ratio
  double small_ball_volume = 0.0;    // vol b = pi (sinh mu - mu)
  double constant_ratio = 0.0;       // pi / vol b
  double constant_bound = 0.0;       // 2 K
};

/// pi / vol b(mu/2), the factor the packing constant 2K must dominate.
template <class Real = double>
Real packing_constant_ratio(double mu) {
  return detail::pi<Real>() / hypgeom::ball_volume<Real>(Real(mu) / 2);
}

/// Checks that the packing argument is blocked at N = N(lambda): the
/// constant certificate pi / vol b < 2K and the margin
/// log[2(3^N-1)/(4N+1)] - log[vol B / vol b] >= 0.
inline PackingReport packing_chain_check(const bounds::BoundParams& p,
                                         Precision precision = Precision::standard) {
  bounds::validate(p);
  PackingReport r;
  r.constant_bound = 2.0 * p.packing_constant;
  if (precision == Precision::extended) {
    const Extended vb = hypgeom::ball_volume<Extended>(Extended(p.mu) / 2);
    r.small_ball_volume = static_cast<double>(vb);
    const Extended ratio = packing_constant_ratio<Extended>(p.mu);
    r.constant_ratio = static_cast<double>(ratio);
    if (!(ratio < Extended(r.constant_bound))) {
      throw DomainError("packing constant certificate fails: pi / vol b = " +
                        std::to_string(r.constant_ratio) + " is not below 2K = " +
                        std::to_string(r.constant_bound));
    }
  } else {
    r.small_ball_volume = hypgeom::ball_volume(p.mu / 2);
    r.constant_ratio = packing_constant_ratio<double>(p.mu);
    if (!(r.constant_ratio < r.constant_bound)) {
      throw DomainError("packing constant certificate fails: pi / vol b = " +
                        std::to_string(r.constant_ratio) + " is not below 2K = " +
                        std::to_string(r.constant_bound));
    }
  }
  r.n = bounds::compute_N(p, precision);
  r.coset_lower = coset_lower_bound(r.n);
  const double big_radius_twice = 2.0 * static_cast<double>(r.n) * p.lambda + p.mu;
  // log vol B - log vol b, with vol = pi (sinh 2r - 2r).
  r.volume_ratio = log_sinh_minus_x(big_radius_twice) - log_sinh_minus_x(p.mu);
  r.margin = r.coset_lower - r.volume_ratio;
  if (r.margin < 0.0) {
    throw InconsistencyError("packing chain margin is negative at N = " + std::to_string(r.n));
  }
  return r;
}

/// 8 N(lambda): the guaranteed length of a relation.
inline std::uint64_t relation_length_bound(const bounds::BoundParams& p,
                                           Precision precision = Precision::standard) {
  return 8 * bounds::compute_N(p, precision);
}

namespace detail {

struct Mat2 {
  Complex a, b, c, d;
};

inline Mat2 mul(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
          m.c * n.b + m.d * n.d};
}

inline Mat2 from(const Isometry& g) { return {g.a(), g.b(), g.c(), g.d()}; }

/// Within tol of +I or -I entrywise after scaling to unit determinant.
inline bool near_projective_identity(const Mat2& m, double tol) {
  const Complex det = m.a * m.d - m.b * m.c;
  if (!(std::abs(det) > 0.0)) return false;
  const Complex s = std::sqrt(det);
  const Complex a = m.a / s, b = m.b / s, c = m.c / s, d = m.d / s;
  const double off = std::max(std::abs(b), std::abs(c));
  const double plus = std::max({std::abs(a - 1.0), std::abs(d - 1.0), off});
  const double minus = std::max({std::abs(a + 1.0), std::abs(d + 1.0), off});
  return std::min(plus, minus) < tol;
}

// Depth-first walk over reduced words of exactly `target` letters extending
// `prefix`, in letter-rank order; stops at the first word evaluating to +-I.
inline bool dfs(const std::array<Mat2, 4>& gens, std::vector<Letter>& prefix, const Mat2& value,
                std::size_t target, double tol) {
  if (prefix.size() == target) return near_projective_identity(value, tol);
  for (Letter l : freegroup::kAlphabet) {
    if (!prefix.empty() && l == freegroup::inverse(prefix.back())) continue;
    prefix.push_back(l);
    if (dfs(gens, prefix, mul(value, gens[freegroup::rank(l)]), target, tol)) return true;
    prefix.pop_back();
  }
  return false;
}

}  // namespace detail

/// Maximum word length accepted by the relation search.
inline constexpr std::size_t kDefaultSearchCap = freegroup::kDefaultBallCap;

/// Shortest reduced word W, 0 < |W| <= max_length, with W(x, y) = +-I within
/// tol; the first such word in shortlex order. Subtrees under each first
/// letter are searched concurrently and the lowest-ranked hit wins.
inline std::optional<ReducedWord> search_relation(const GeneratorPair& gens, std::size_t max_length,
                                                  double tol = 1e-9,
                                                  std::size_t cap = kDefaultSearchCap) {
  if (max_length > cap) {
    throw CapExceeded("relation search length " + std::to_string(max_length) +
                      " exceeds enumeration cap " + std::to_string(cap));
  }
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const std::array<detail::Mat2, 4> mats = {detail::from(gens.x), detail::from(gens.x.inverse()),
                                            detail::from(gens.y), detail::from(gens.y.inverse())};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::array<std::future<std::optional<std::vector<Letter>>>, 4> tasks;
    for (Letter first : freegroup::kAlphabet) {
      tasks[freegroup::rank(first)] = std::async(std::launch::async, [&, first, len] {
        std::vector<Letter> prefix{first};
        prefix.reserve(len);
        std::optional<std::vector<Letter>> hit;
        if (detail::dfs(mats, prefix, mats[freegroup::rank(first)], len, tol)) hit = prefix;
        return hit;
      });
    }
    std::optional<ReducedWord> best;
    for (auto& t : tasks) {
      auto hit = t.get();
      if (hit && !best) best = ReducedWord::reduce(*hit);
    }
    if (best) return best;
  }
  return std::nullopt;
}

/// W(x, y) as a matrix product.
inline Isometry evaluate(const ReducedWord& w, const Isometry& x, const Isometry& y) {
  Isometry out = Isometry::identity();
  for (Letter l : w.letters()) {
    switch (l) {
      case Letter::x: out = out * x; break;
      case Letter::x_inv: out = out * x.inverse(); break;
      case Letter::y: out = out * y; break;
      case Letter::y_inv: out = out * y.inverse(); break;
    }
  }
  return out;
}

}  // namespace margulis::packing
