#pragma once

// Third-order forward-mode derivative jets of scalar functions of one
// variable. A Jet3 carries (f, f', f'', f''') at a point; arithmetic applies
// the product/quotient/chain rules exactly up to order three.
//
// Orders that are unknown (e.g. the derivative of a jet obtained by
// shifting) are carried as NaN. Output order k only ever reads input orders
// <= k, so an unknown order never contaminates lower ones.

#include <cmath>
#include <limits>
#include <ostream>

namespace rulekit {

struct Jet3 {
  double v0 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;

  constexpr Jet3() = default;
  constexpr Jet3(double value) : v0(value) {}  // NOLINT: constants promote
  constexpr Jet3(double a, double b, double c, double d)
      : v0(a), v1(b), v2(c), v3(d) {}

  static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  static constexpr Jet3 variable(double u) { return {u, 1.0, 0.0, 0.0}; }

  constexpr double operator[](int k) const {
    return k == 0 ? v0 : k == 1 ? v1 : k == 2 ? v2 : v3;
  }

  Jet3& operator+=(const Jet3& o) {
    v0 += o.v0; v1 += o.v1; v2 += o.v2; v3 += o.v3;
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    v0 -= o.v0; v1 -= o.v1; v2 -= o.v2; v3 -= o.v3;
    return *this;
  }
  Jet3& operator*=(const Jet3& o);
  Jet3& operator/=(const Jet3& o);
};

constexpr Jet3 operator-(const Jet3& a) { return {-a.v0, -a.v1, -a.v2, -a.v3}; }

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2, a.v3 + b.v3};
}

constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2, a.v3 - b.v3};
}

constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v0 * b.v0,
          a.v1 * b.v0 + a.v0 * b.v1,
          a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
          a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3};
}

/// Applies an outer function with derivatives (p0..p3) at a.v0 to the inner
/// jet a (Faa di Bruno to third order).
constexpr Jet3 compose(const Jet3& a, double p0, double p1, double p2, double p3) {
  return {p0,
          p1 * a.v1,
          p2 * a.v1 * a.v1 + p1 * a.v2,
          p3 * a.v1 * a.v1 * a.v1 + 3.0 * p2 * a.v1 * a.v2 + p1 * a.v3};
}

/// Reciprocal; requires a.v0 != 0 (checked by callers that can report it).
constexpr Jet3 reciprocal(const Jet3& a) {
  const double r = 1.0 / a.v0;
  return compose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

constexpr Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

inline Jet3& Jet3::operator*=(const Jet3& o) { return *this = *this * o; }
inline Jet3& Jet3::operator/=(const Jet3& o) { return *this = *this / o; }

/// Derivative jet: (f', f'', f''', unknown).
constexpr Jet3 shift(const Jet3& a) {
  return {a.v1, a.v2, a.v3, std::numeric_limits<double>::quiet_NaN()};
}

/// Antiderivative jet with the given value: (F, f, f', f'').
constexpr Jet3 unshift(const Jet3& a, double value) { return {value, a.v0, a.v1, a.v2}; }

inline Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.v0), c = std::cos(a.v0);
  return compose(a, s, c, -s, -c);
}

inline Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.v0), c = std::cos(a.v0);
  return compose(a, c, -s, -c, s);
}

inline Jet3 tan(const Jet3& a) {
  const double t = std::tan(a.v0);
  const double s2 = 1.0 + t * t;  // sec^2
  return compose(a, t, s2, 2.0 * t * s2, 2.0 * s2 * (s2 + 2.0 * t * t));
}

inline Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.v0);
  return compose(a, e, e, e, e);
}

/// Requires a.v0 > 0.
inline Jet3 log(const Jet3& a) {
  const double r = 1.0 / a.v0;
  return compose(a, std::log(a.v0), r, -r * r, 2.0 * r * r * r);
}

/// Requires a.v0 > 0.
inline Jet3 sqrt(const Jet3& a) {
  const double s = std::sqrt(a.v0);
  const double r = 1.0 / a.v0;
  return compose(a, s, 0.5 * s * r, -0.25 * s * r * r, 0.375 * s * r * r * r);
}

/// Requires a.v0 != 0 (|x| is not differentiable at the origin).
inline Jet3 abs(const Jet3& a) { return a.v0 < 0.0 ? -a : a; }

/// Integer power. Negative exponents require a.v0 != 0.
inline Jet3 pow(const Jet3& a, int n) {
  if (n == 0) return Jet3::constant(1.0);
  double p[4];
  double coeff = 1.0;
  for (int k = 0; k < 4; ++k) {
    // n (n-1) ... (n-k+1) x^(n-k); a zero coefficient short-circuits x^(neg)
    p[k] = coeff == 0.0 ? 0.0 : coeff * std::pow(a.v0, n - k);
    coeff *= static_cast<double>(n - k);
  }
  return compose(a, p[0], p[1], p[2], p[3]);
}

inline bool isfinite(const Jet3& a) {
  return std::isfinite(a.v0) && std::isfinite(a.v1) && std::isfinite(a.v2) &&
         std::isfinite(a.v3);
}

inline std::ostream& operator<<(std::ostream& os, const Jet3& a) {
  return os << '(' << a.v0 << ", " << a.v1 << ", " << a.v2 << ", " << a.v3 << ')';
}

}  // namespace rulekit
