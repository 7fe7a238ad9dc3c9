#pragma once

#include <cmath>

namespace grwsym {

/// Truncated Taylor jet: a value with its first three derivatives along one
/// parameter. Arithmetic propagates derivatives exactly up to order three.
struct Jet3 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  constexpr Jet3() = default;
  constexpr Jet3(double value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet3(double value, double a, double b, double c) : v(value), d1(a), d2(b), d3(c) {}

  /// Independent variable seeded at x0 (derivative one).
  static constexpr Jet3 variable(double x0) { return {x0, 1.0, 0.0, 0.0}; }

  bool is_constant() const { return d1 == 0.0 && d2 == 0.0 && d3 == 0.0; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3}; }
inline Jet3 operator-(const Jet3& a, const Jet3& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3}; }
inline Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

/// Chain rule for y = phi(u) given phi', phi'', phi''' at u.v (Faa di Bruno, order 3).
inline Jet3 compose(const Jet3& u, double phi, double p1, double p2, double p3) {
  return {phi, p1 * u.d1, p2 * u.d1 * u.d1 + p1 * u.d2,
          p3 * u.d1 * u.d1 * u.d1 + 3.0 * p2 * u.d1 * u.d2 + p1 * u.d3};
}

/// Caller guarantees b.v != 0.
inline Jet3 reciprocal(const Jet3& b) {
  const double r = 1.0 / b.v;
  return compose(b, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

inline Jet3& operator+=(Jet3& a, const Jet3& b) { return a = a + b; }
inline Jet3& operator-=(Jet3& a, const Jet3& b) { return a = a - b; }
inline Jet3& operator*=(Jet3& a, const Jet3& b) { return a = a * b; }

inline Jet3 sin(const Jet3& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return compose(u, s, c, -s, -c);
}
inline Jet3 cos(const Jet3& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return compose(u, c, -s, -c, s);
}
inline Jet3 tan(const Jet3& u) {
  const double t = std::tan(u.v), s2 = 1.0 + t * t;
  return compose(u, t, s2, 2.0 * t * s2, 2.0 * s2 * (1.0 + 3.0 * t * t));
}
inline Jet3 sinh(const Jet3& u) {
  const double s = std::sinh(u.v), c = std::cosh(u.v);
  return compose(u, s, c, s, c);
}
inline Jet3 cosh(const Jet3& u) {
  const double s = std::sinh(u.v), c = std::cosh(u.v);
  return compose(u, c, s, c, s);
}
inline Jet3 tanh(const Jet3& u) {
  const double t = std::tanh(u.v), s2 = 1.0 - t * t;
  return compose(u, t, s2, -2.0 * t * s2, -2.0 * s2 * (1.0 - 3.0 * t * t));
}
inline Jet3 exp(const Jet3& u) {
  const double e = std::exp(u.v);
  return compose(u, e, e, e, e);
}
/// Caller guarantees u.v > 0.
inline Jet3 log(const Jet3& u) {
  const double r = 1.0 / u.v;
  return compose(u, std::log(u.v), r, -r * r, 2.0 * r * r * r);
}
/// Caller guarantees u.v >= 0.
inline Jet3 sqrt(const Jet3& u) {
  const double s = std::sqrt(u.v);
  return compose(u, s, 0.5 / s, -0.25 / (s * u.v), 0.375 / (s * u.v * u.v));
}
inline Jet3 abs(const Jet3& u) {
  const double sg = u.v > 0.0 ? 1.0 : (u.v < 0.0 ? -1.0 : 0.0);
  return compose(u, std::abs(u.v), sg, 0.0, 0.0);
}

/// u^k for integer k by repeated multiplication; exact at u = 0 for k >= 0.
inline Jet3 powi(const Jet3& u, long k) {
  if (k < 0) return reciprocal(powi(u, -k));
  Jet3 result{1.0};
  Jet3 base = u;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

/// u^p for a constant real exponent; caller guarantees u.v > 0 (or u.v == 0 with p >= 3).
inline Jet3 powr(const Jet3& u, double p) {
  const double x = u.v;
  return compose(u, std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0),
                 p * (p - 1.0) * (p - 2.0) * std::pow(x, p - 3.0));
}

}  // namespace grwsym
