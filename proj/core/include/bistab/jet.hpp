#pragma once

#include <cmath>

namespace bistab {

/// Truncated Taylor expansion of order three: c_k = f^(k)(x) / k!.
struct Jet3 {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  static constexpr Jet3 variable(double x) noexcept { return {x, 1.0, 0.0, 0.0}; }
  static constexpr Jet3 constant(double v) noexcept { return {v, 0.0, 0.0, 0.0}; }

  constexpr double value() const noexcept { return c0; }
  constexpr double d1() const noexcept { return c1; }
  constexpr double d2() const noexcept { return 2.0 * c2; }
  constexpr double d3() const noexcept { return 6.0 * c3; }

  bool is_finite() const noexcept {
    return std::isfinite(c0) && std::isfinite(c1) && std::isfinite(c2) && std::isfinite(c3);
  }

  friend constexpr bool operator==(const Jet3&, const Jet3&) = default;
};

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) noexcept {
  return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
}
constexpr Jet3 operator-(const Jet3& a, const Jet3& b) noexcept {
  return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3};
}
constexpr Jet3 operator-(const Jet3& a) noexcept { return {-a.c0, -a.c1, -a.c2, -a.c3}; }
constexpr Jet3 operator*(double s, const Jet3& a) noexcept {
  return {s * a.c0, s * a.c1, s * a.c2, s * a.c3};
}
constexpr Jet3 operator*(const Jet3& a, double s) noexcept { return s * a; }
constexpr Jet3 operator+(const Jet3& a, double s) noexcept { return {a.c0 + s, a.c1, a.c2, a.c3}; }
constexpr Jet3 operator+(double s, const Jet3& a) noexcept { return a + s; }
constexpr Jet3 operator-(const Jet3& a, double s) noexcept { return {a.c0 - s, a.c1, a.c2, a.c3}; }
constexpr Jet3 operator-(double s, const Jet3& a) noexcept { return {s - a.c0, -a.c1, -a.c2, -a.c3}; }

constexpr Jet3 operator*(const Jet3& a, const Jet3& b) noexcept {
  return {a.c0 * b.c0,
          a.c0 * b.c1 + a.c1 * b.c0,
          a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0,
          a.c0 * b.c3 + a.c1 * b.c2 + a.c2 * b.c1 + a.c3 * b.c0};
}

constexpr Jet3 operator/(const Jet3& a, const Jet3& b) noexcept {
  const double q0 = a.c0 / b.c0;
  const double q1 = (a.c1 - q0 * b.c1) / b.c0;
  const double q2 = (a.c2 - q0 * b.c2 - q1 * b.c1) / b.c0;
  const double q3 = (a.c3 - q0 * b.c3 - q1 * b.c2 - q2 * b.c1) / b.c0;
  return {q0, q1, q2, q3};
}
constexpr Jet3 operator/(const Jet3& a, double s) noexcept {
  return {a.c0 / s, a.c1 / s, a.c2 / s, a.c3 / s};
}
constexpr Jet3 operator/(double s, const Jet3& b) noexcept { return Jet3::constant(s) / b; }

/// Pushes the jet `u` through a scalar kernel whose value and first three derivatives at
/// u.c0 are (d0, d1, d2, d3).
constexpr Jet3 apply_kernel(const Jet3& u, double d0, double d1, double d2, double d3) noexcept {
  return {d0,
          d1 * u.c1,
          d1 * u.c2 + 0.5 * d2 * u.c1 * u.c1,
          d1 * u.c3 + d2 * u.c1 * u.c2 + (d3 / 6.0) * u.c1 * u.c1 * u.c1};
}

/// Chain rule on jets: `outer` is the jet of the outer function taken at inner.c0.
constexpr Jet3 compose(const Jet3& outer, const Jet3& inner) noexcept {
  return {outer.c0,
          outer.c1 * inner.c1,
          outer.c1 * inner.c2 + outer.c2 * inner.c1 * inner.c1,
          outer.c1 * inner.c3 + 2.0 * outer.c2 * inner.c1 * inner.c2 +
              outer.c3 * inner.c1 * inner.c1 * inner.c1};
}

Jet3 exp(const Jet3& u);
Jet3 log(const Jet3& u);
Jet3 sqrt(const Jet3& u);
Jet3 tanh(const Jet3& u);
Jet3 atan(const Jet3& u);
Jet3 erf(const Jet3& u);
/// Gudermannian function gd(u) = 2 atan(tanh(u / 2)).
Jet3 gd(const Jet3& u);
/// u^p for a constant exponent. A zero base is accepted; derivative terms of negative
/// order then become infinite.
Jet3 pow(const Jet3& u, double p);

/// Series reversion: the jet of f^{-1} at f(x), given the jet of f at x.
Jet3 invert(const Jet3& f_at_x, double x);

}  // namespace bistab
