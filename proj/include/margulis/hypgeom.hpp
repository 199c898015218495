#pragma once

// Upper half-space model of hyperbolic 3-space: points (z, t) with t > 0,
// isometries as unit-determinant 2x2 complex matrices acting by the
// quaternionic extension of the Moebius action.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "margulis/error.hpp"
#include "margulis/numeric.hpp"

namespace margulis::hypgeom {

using Complex = std::complex<double>;

class Point {
 public:
  Point(Complex z, double t) : z_(z), t_(t) {
    if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("point of upper half-space needs finite z and height t > 0");
    }
  }

  Complex z() const { return z_; }
  double t() const { return t_; }

 private:
  Complex z_;
  double t_;
};

/// Element of SL(2,C). Construction checks the determinant; products and
/// inverses are re-normalized so rounding never accumulates.
class Isometry {
 public:
  static constexpr double kDeterminantTolerance = 1e-12;

  Isometry(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (!(std::abs(determinant() - 1.0) < kDeterminantTolerance)) {
      throw DomainError("matrix determinant differs from 1 by more than 1e-12");
    }
  }

  /// Scales by 1/sqrt(det) so the result has unit determinant.
  static Isometry normalized(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det))) {
      throw DomainError("singular matrix cannot represent an isometry");
    }
    const Complex s = std::sqrt(det);
    return Isometry(a / s, b / s, c / s, d / s, Unchecked{});
  }

  static Isometry identity() { return Isometry(1.0, 0.0, 0.0, 1.0); }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex determinant() const { return a_ * d_ - b_ * c_; }
  Complex trace() const { return a_ + d_; }

  Isometry inverse() const { return Isometry(d_, -b_, -c_, a_, Unchecked{}); }

  friend Isometry operator*(const Isometry& m, const Isometry& n) {
    return normalized(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                      m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
  }

 private:
  struct Unchecked {};
  Isometry(Complex a, Complex b, Complex c, Complex d, Unchecked) : a_(a), b_(b), c_(c), d_(d) {}

  Complex a_, b_, c_, d_;
};

/// Hyperbolic distance; evaluates 2 asinh(|p - q|_E / (2 sqrt(t_p t_q))), which
/// equals acosh(1 + (|dz|^2 + dt^2) / (2 t_p t_q)) without cancellation near 0.
inline double distance(const Point& p, const Point& q) {
  const double dz = std::abs(p.z() - q.z());
  const double dt = p.t() - q.t();
  const double chord = std::hypot(dz, dt);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.t() * q.t())));
}

/// (a w + b)(c w + d)^-1 for the quaternion w = z + t j.
inline Point apply(const Isometry& g, const Point& p) {
  const Complex z = p.z();
  const double t = p.t();
  const Complex num = g.a() * z + g.b();
  const Complex den = g.c() * z + g.d();
  const double scale = std::norm(den) + std::norm(g.c()) * t * t;
  const Complex z_out = (num * std::conj(den) + g.a() * std::conj(g.c()) * t * t) / scale;
  return Point(z_out, t / scale);
}

inline double displacement(const Isometry& g, const Point& p) { return distance(p, apply(g, p)); }

/// Volume of a hyperbolic ball of radius r: pi (sinh 2r - 2r).
template <class Real = double>
Real ball_volume(const Real& r) {
  if (r < Real(0)) throw DomainError("ball radius must be nonnegative");
  if (r == Real(0)) return Real(0);
  return detail::pi<Real>() * sinh_minus_x(Real(2 * r));
}

/// Geodesic triangle given by its three side lengths.
class Triangle {
 public:
  Triangle(double a, double b, double c) : sides_{a, b, c} {
    for (double s : sides_) {
      if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("triangle sides must be positive and finite");
    }
    if (!(a < b + c && b < a + c && c < a + b)) {
      throw DomainError("side lengths violate the strict triangle inequality");
    }
  }

  double a() const { return sides_[0]; }
  double b() const { return sides_[1]; }
  double c() const { return sides_[2]; }
  double shortest_side() const { return std::min({sides_[0], sides_[1], sides_[2]}); }
  const std::array<double, 3>& sides() const { return sides_; }

 private:
  std::array<double, 3> sides_;
};

/// Interior angles opposite a, b, c. The law of cosines is used in its
/// half-angle form, tan^2(A/2) = sinh(s-b) sinh(s-c) / (sinh s sinh(s-a)),
/// which stays accurate for thin and tiny triangles.
inline std::array<double, 3> triangle_angles(const Triangle& tri) {
  const auto& side = tri.sides();
  const double s = 0.5 * (side[0] + side[1] + side[2]);
  std::array<double, 3> excess{};
  for (int i = 0; i < 3; ++i) excess[i] = std::sinh(s - side[i]);
  const double sinh_s = std::sinh(s);
  std::array<double, 3> angles{};
  for (int i = 0; i < 3; ++i) {
    const double num = excess[(i + 1) % 3] * excess[(i + 2) % 3];
    const double den = sinh_s * excess[i];
    angles[i] = 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)), std::sqrt(std::max(den, 0.0)));
  }
  return angles;
}

/// Angle defect pi - (A + B + C).
inline double triangle_area(const Triangle& tri) {
  const auto ang = triangle_angles(tri);
  return std::max(0.0, std::numbers::pi - ang[0] - ang[1] - ang[2]);
}

/// Area of the triangle with one side on the unit semicircle between
/// abscissae x1 < x2 and an ideal vertex at infinity: arcsin x2 - arcsin x1.
inline double ideal_cap_area(double x1, double x2) {
  if (!(-1.0 < x1 && x1 < x2 && x2 < 1.0)) {
    throw DomainError("ideal cap needs -1 < x1 < x2 < 1");
  }
  return std::asin(x2) - std::asin(x1);
}

/// |tr(X)^2 - 4| + |tr(X Y X^-1 Y^-1) - 2|.
inline double jorgensen_value(const Isometry& x, const Isometry& y) {
  const Isometry comm = x * y * x.inverse() * y.inverse();
  const Complex tx = x.trace();
  return std::abs(tx * tx - 4.0) + std::abs(comm.trace() - 2.0);
}

}  // namespace margulis::hypgeom
