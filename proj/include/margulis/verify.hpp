#pragma once

// Runtime property suites behind `margulis verify`. Each check recomputes a
// quantity by a second route (enumeration, quadrature, a different
// precision) and compares.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "margulis/bounds.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/hypgeom.hpp"
#include "margulis/io.hpp"
#include "margulis/packing.hpp"

namespace margulis::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

using Suite = std::vector<Check>;

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"freegroup", "geometry", "bounds", "packing"};
  return names;
}

/// n log-uniform points from lo to hi inclusive.
inline std::vector<double> log_uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = n == 1 ? lo : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

/// Grid used by the bounds and packing suites: 500 points in (0.1005, 0.5493).
inline std::vector<double> default_lambda_grid() { return log_uniform_grid(0.1005, 0.5493, 500); }

namespace detail {

inline Check run(std::string name, const std::function<bool(std::string&)>& body) {
  Check c{std::move(name), false, {}};
  try {
    c.passed = body(c.detail);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  return c;
}

inline freegroup::ReducedWord random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  std::uniform_int_distribution<int> letter_dist(0, 3);
  std::vector<freegroup::Letter> raw(len_dist(rng));
  for (auto& l : raw) l = static_cast<freegroup::Letter>(letter_dist(rng));
  return freegroup::reduce(raw);
}

inline hypgeom::Isometry random_isometry(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const hypgeom::Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
    const auto det = a * d - b * c;
    if (std::abs(det) > 0.1) return hypgeom::Isometry::normalized(a, b, c, d);
  }
}

inline hypgeom::Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> h(0.2, 3.0);
  return hypgeom::Point({u(rng), u(rng)}, h(rng));
}

}  // namespace detail

inline Suite freegroup_suite() {
  using namespace freegroup;
  Suite s;
  s.push_back(detail::run("ball counts 2(3^n-1)+1", [](std::string& why) {
    why = "n = 0..12";
    for (std::size_t n = 0; n <= 12; ++n) {
      const auto size = enumerate_ball(n).size();
      const std::uint64_t want = n == 0 ? 1 : ball_size_formula(n);
      if (size != want) {
        why = "n = " + std::to_string(n) + ": " + std::to_string(size) + " != " + std::to_string(want);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("V_8 is reduced, duplicate-free and shortlex ordered", [](std::string& why) {
    const auto ball = enumerate_ball(8);
    const auto& w = ball.packed();
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (!(w[i - 1] < w[i])) {
        why = "order breaks at index " + std::to_string(i);
        return false;
      }
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].unpack().length() != w[i].length()) {
        why = "unreduced word at index " + std::to_string(i);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("concat: length <= m + n and associativity (2000 triples)", [](std::string& why) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
      const auto a = detail::random_word(rng, 12), b = detail::random_word(rng, 12),
                 c = detail::random_word(rng, 12);
      if (concat(a, b).length() > a.length() + b.length()) {
        why = a.to_string() + " * " + b.to_string();
        return false;
      }
      if (concat(concat(a, b), c) != concat(a, concat(b, c))) {
        why = "(ab)c != a(bc) for " + a.to_string() + ", " + b.to_string() + ", " + c.to_string();
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("cyclic powers: count <= 2k+1 on V_4, k <= 8, equality iff |t| = 1",
                          [](std::string& why) {
                            const auto ball = enumerate_ball(4);
                            for (const auto& pw : ball.packed()) {
                              const auto t = pw.unpack();
                              for (std::uint64_t k = 1; k <= 8; ++k) {
                                const auto c = count_cyclic_powers(t, k);
                                if (c > 2 * k + 1 || (c == 2 * k + 1) != (t.length() == 1)) {
                                  why = t.to_string() + ", k = " + std::to_string(k) + ": " + std::to_string(c);
                                  return false;
                                }
                              }
                            }
                            return true;
                          }));
  s.push_back(detail::run("cyclic powers: closed form equals explicit reduction on V_4, k <= 8",
                          [](std::string& why) {
                            const auto ball = enumerate_ball(4);
                            for (const auto& pw : ball.packed()) {
                              const auto t = pw.unpack();
                              for (std::uint64_t k = 1; k <= 8; ++k) {
                                if (count_cyclic_powers(t, k) != count_cyclic_powers_by_reduction(t, k)) {
                                  why = t.to_string() + ", k = " + std::to_string(k);
                                  return false;
                                }
                              }
                            }
                            return true;
                          }));
  s.push_back(detail::run("cyclic_reduce reassembles every word of V_6", [](std::string& why) {
    const auto ball = enumerate_ball(6);
    for (const auto& pw : ball.packed()) {
      const auto t = pw.unpack();
      const auto [conj, core] = cyclic_reduce(t);
      if (concat(conj, concat(core, invert(conj))) != t || !is_cyclically_reduced(core) ||
          conj.length() * 2 + core.length() != t.length()) {
        why = t.to_string();
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("reduce is idempotent (2000 raw sequences)", [](std::string& why) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> letter(0, 3);
    for (int i = 0; i < 2000; ++i) {
      std::vector<Letter> raw(static_cast<std::size_t>(i % 24));
      for (auto& l : raw) l = static_cast<Letter>(letter(rng));
      const auto once = reduce(raw);
      if (reduce(once.letters()) != once || once.length() > raw.size()) {
        why = once.to_string();
        return false;
      }
    }
    return true;
  }));
  return s;
}

inline Suite geometry_suite() {
  using namespace hypgeom;
  Suite s;
  s.push_back(detail::run("isometries preserve distance (1000 samples, 1e-9)", [](std::string& why) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
      const auto g = detail::random_isometry(rng);
      const auto p = detail::random_point(rng), q = detail::random_point(rng);
      const double err = std::abs(distance(apply(g, p), apply(g, q)) - distance(p, q));
      if (!(err < 1e-9)) {
        why = "error " + std::to_string(err);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("ball volume equals 4 pi int_0^r sinh^2 (relative 1e-9)", [](std::string& why) {
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
      // composite Simpson, 20000 panels
      const int n = 20000;
      const double h = r / n;
      double acc = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double sh = std::sinh(i * h);
        acc += w * sh * sh;
      }
      const double quad = 4.0 * std::numbers::pi * acc * h / 3.0;
      const double rel = std::abs(ball_volume(r) - quad) / quad;
      if (!(rel < 1e-9)) {
        why = "r = " + std::to_string(r) + " relative error " + std::to_string(rel);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("triangle area < min(pi, shortest side) (10^4 triangles)", [](std::string& why) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> logside(std::log(1e-3), std::log(10.0));
    int made = 0;
    while (made < 10000) {
      const double a = std::exp(logside(rng)), b = std::exp(logside(rng)), c = std::exp(logside(rng));
      if (!(a < b + c && b < a + c && c < a + b)) continue;
      ++made;
      const Triangle t(a, b, c);
      const double area = triangle_area(t);
      if (!(area < std::min(std::numbers::pi, t.shortest_side()) + 1e-9)) {
        why = "sides " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("triangle area is symmetric in its sides", [](std::string& why) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int i = 0; i < 2000; ++i) {
      const double a = u(rng), b = u(rng), c = u(rng);
      if (!(a < b + c && b < a + c && c < a + b)) continue;
      const double ref = triangle_area(Triangle(a, b, c));
      for (const auto& perm : {Triangle(b, c, a), Triangle(c, a, b), Triangle(b, a, c)}) {
        if (!(std::abs(triangle_area(perm) - ref) < 1e-12)) {
          why = "permutation changed the area";
          return false;
        }
      }
    }
    return true;
  }));
  s.push_back(detail::run("Jorgensen value is conjugation invariant (500 samples, 1e-9)", [](std::string& why) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 500; ++i) {
      const auto x = detail::random_isometry(rng), y = detail::random_isometry(rng),
                 h = detail::random_isometry(rng);
      const double v = jorgensen_value(x, y);
      const double w = jorgensen_value(h * x * h.inverse(), h * y * h.inverse());
      if (!(std::abs(v - w) < 1e-9 * std::max(1.0, v))) {
        why = std::to_string(v) + " vs " + std::to_string(w);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("displacement is conjugation equivariant (500 samples, 1e-9)", [](std::string& why) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
      const auto g = detail::random_isometry(rng), h = detail::random_isometry(rng);
      const auto p = detail::random_point(rng);
      const double lhs = displacement(g, p);
      const double rhs = displacement(h * g * h.inverse(), apply(h, p));
      if (!(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, lhs))) {
        why = std::to_string(lhs) + " vs " + std::to_string(rhs);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("figure-eight generators: Jorgensen value = 1 (>= 1 up to 1e-12)", [](std::string& why) {
    const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    const Isometry x(1.0, 1.0, 0.0, 1.0), y(1.0, 0.0, omega, 1.0);
    const double v = jorgensen_value(x, y);
    why = "value " + std::to_string(v);
    return std::abs(v - 1.0) < 1e-12;
  }));
  return s;
}

inline Suite bounds_suite(const bounds::BoundParams& base = {}) {
  using namespace bounds;
  Suite s;
  const auto grid = default_lambda_grid();
  std::vector<std::uint64_t> ns(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    BoundParams p = base;
    p.lambda = grid[i];
    ns[i] = compute_N(p);
  }
  auto at = [&](std::size_t i) {
    BoundParams p = base;
    p.lambda = grid[i];
    return p;
  };
  s.push_back(detail::run("N(lambda) is the least N with gap >= 0 (500 lambdas)", [&](std::string& why) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto p = at(i);
      if (!(margulis_gap(ns[i], p) >= 0.0) || !(ns[i] == 1 || margulis_gap(ns[i] - 1, p) < 0.0)) {
        why = "lambda = " + std::to_string(grid[i]);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("N(lambda) < 1 + 110 beta log beta (500 lambdas)", [&](std::string& why) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(static_cast<double>(ns[i]) < nestimate(at(i)))) {
        why = "lambda = " + std::to_string(grid[i]);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("nestimate anchor 1 + 110 (1.11) log 1.11 = 13.7 +- 0.05", [](std::string& why) {
    const double v = 1.0 + 110.0 * 1.11 * std::log(1.11);
    why = "value " + std::to_string(v);
    return std::abs(v - 13.7) <= 0.05;
  }));
  s.push_back(detail::run("N(lambda) is nondecreasing in lambda", [&](std::string& why) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (ns[i] < ns[i - 1]) {
        why = "drop at lambda = " + std::to_string(grid[i]);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("exact volume bound <= closed-form volume bound", [&](std::string& why) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto p = at(i);
      const double exact = p.lambda * (8.0 * static_cast<double>(ns[i]) - 2.0);
      if (!(exact <= volume_bound_closed(p))) {
        why = "lambda = " + std::to_string(grid[i]);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("double and 256-bit scans give identical N (500 lambdas)", [&](std::string& why) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto ext = compute_N(at(i), Precision::extended);
      if (ext != ns[i]) {
        why = "lambda = " + std::to_string(grid[i]) + ": " + std::to_string(ns[i]) + " vs " + std::to_string(ext);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("rank_from_index(2, floor(index)) >= rank bound - 1", [&](std::string& why) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto p = at(i);
      const double index = p.lambda * (8.0 * static_cast<double>(ns[i]) - 2.0) / p.weeks_volume;
      const double via_subgroup = rank_from_index(2, static_cast<std::uint64_t>(std::floor(index)));
      if (!(via_subgroup >= rank_bound_from_index(index) - 1.0)) {
        why = "lambda = " + std::to_string(grid[i]);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("gap stays >= 0 for 64 steps past N(lambda) (diagnostic)", [&](std::string& why) {
    for (std::size_t i = 0; i < grid.size(); i += 10) {
      const auto p = at(i);
      for (std::uint64_t n = ns[i]; n < ns[i] + 64; ++n) {
        if (margulis_gap(n, p) < 0.0) {
          why = "sign reversal at lambda = " + std::to_string(grid[i]) + ", n = " + std::to_string(n);
          return false;
        }
      }
    }
    return true;
  }));
  return s;
}

inline Suite packing_suite(const bounds::BoundParams& base = {}) {
  Suite s;
  s.push_back(detail::run("constant certificate: pi / vol b(mu/2) < 2K = " +
                              std::to_string(static_cast<long long>(2 * base.packing_constant)),
                          [&](std::string& why) {
                            const Extended ratio = packing::packing_constant_ratio<Extended>(base.mu);
                            why = "pi / vol b = " + io::format_real(static_cast<double>(ratio));
                            return ratio < Extended(2 * base.packing_constant);
                          }));
  s.push_back(detail::run("vol b(0.052) = 0.000589 (relative 1e-3)", [](std::string& why) {
    const double v = hypgeom::ball_volume(0.052);
    why = "value " + io::format_real(v);
    return std::abs(v - 0.000589) / 0.000589 < 1e-3;
  }));
  s.push_back(detail::run("packing margin >= 0 on the lambda grid", [&](std::string& why) {
    for (double lambda : default_lambda_grid()) {
      bounds::BoundParams p = base;
      p.lambda = lambda;
      const auto r = packing::packing_chain_check(p);
      if (!(r.margin >= 0.0)) {
        why = "lambda = " + std::to_string(lambda);
        return false;
      }
    }
    return true;
  }));
  s.push_back(detail::run("coset bound: exact-integer and log paths agree to 1e-12 (N <= 40)",
                          [](std::string& why) {
                            for (std::uint64_t n = 1; n <= packing::kExactCosetLimit; ++n) {
                              const double d =
                                  std::abs(packing::coset_lower_bound_exact(n) - packing::coset_lower_bound_log(n));
                              if (!(d < 1e-12)) {
                                why = "N = " + std::to_string(n);
                                return false;
                              }
                            }
                            return true;
                          }));
  s.push_back(detail::run("commuting parabolics: shortest relation is xyXY", [](std::string& why) {
    const packing::GeneratorPair g{hypgeom::Isometry(1.0, 1.0, 0.0, 1.0),
                                   hypgeom::Isometry(1.0, hypgeom::Complex(0.0, 1.0), 0.0, 1.0)};
    const auto w = packing::search_relation(g, 6);
    why = w ? w->to_string() : "none";
    return w && w->to_string() == "xyXY";
  }));
  s.push_back(detail::run("Sanov pair: no relation up to length 12 (tol 1e-6)", [](std::string& why) {
    const packing::GeneratorPair g{hypgeom::Isometry(1.0, 2.0, 0.0, 1.0), hypgeom::Isometry(1.0, 0.0, 2.0, 1.0)};
    const auto w = packing::search_relation(g, 12, 1e-6);
    if (w) why = "found " + w->to_string();
    return !w;
  }));
  return s;
}

inline Suite run_suite(const std::string& name, const bounds::BoundParams& base = {}) {
  if (name == "freegroup") return freegroup_suite();
  if (name == "geometry") return geometry_suite();
  if (name == "bounds") return bounds_suite(base);
  if (name == "packing") return packing_suite(base);
  if (name == "all") {
    Suite all;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, base);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown suite '" + name + "' (expected all, freegroup, geometry, bounds, packing)");
}

}  // namespace margulis::verify
