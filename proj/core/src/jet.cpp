#include "bistab/jet.hpp"

#include <cmath>
#include <numbers>

namespace bistab {

Jet3 exp(const Jet3& u) {
  const double e = std::exp(u.c0);
  return apply_kernel(u, e, e, e, e);
}

Jet3 log(const Jet3& u) {
  const double r = 1.0 / u.c0;
  return apply_kernel(u, std::log(u.c0), r, -r * r, 2.0 * r * r * r);
}

Jet3 sqrt(const Jet3& u) {
  const double s = std::sqrt(u.c0);
  const double r = 1.0 / u.c0;
  return apply_kernel(u, s, 0.5 / s, -0.25 * r / s, 0.375 * r * r / s);
}

Jet3 tanh(const Jet3& u) {
  const double t = std::tanh(u.c0);
  // 1 - t^2 computed through cosh keeps full relative precision in the saturated tails.
  const double ch = std::cosh(u.c0);
  const double sech2 = std::isfinite(ch) ? 1.0 / (ch * ch) : 0.0;
  return apply_kernel(u, t, sech2, -2.0 * t * sech2, sech2 * (6.0 * t * t - 2.0));
}

Jet3 atan(const Jet3& u) {
  const double x = u.c0;
  const double q = 1.0 / (1.0 + x * x);
  return apply_kernel(u, std::atan(x), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q * q * q);
}

Jet3 erf(const Jet3& u) {
  const double x = u.c0;
  const double d1 = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x);
  return apply_kernel(u, std::erf(x), d1, -2.0 * x * d1, (4.0 * x * x - 2.0) * d1);
}

Jet3 gd(const Jet3& u) {
  const double x = u.c0;
  const double ch = std::cosh(x);
  const double sech = std::isfinite(ch) ? 1.0 / ch : 0.0;
  const double t = std::tanh(x);
  return apply_kernel(u, std::atan(std::sinh(x)), sech, -sech * t, sech * (t * t - sech * sech));
}

namespace {

// p (p-1) ... (p-k+1) u^(p-k), with an exactly vanishing falling factorial winning over 0^negative.
double power_derivative(double base, double p, int k) {
  double coeff = 1.0;
  for (int i = 0; i < k; ++i) coeff *= (p - i);
  if (coeff == 0.0) return 0.0;
  return coeff * std::pow(base, p - k);
}

}  // namespace

Jet3 pow(const Jet3& u, double p) {
  return apply_kernel(u, power_derivative(u.c0, p, 0), power_derivative(u.c0, p, 1),
                      power_derivative(u.c0, p, 2), power_derivative(u.c0, p, 3));
}

Jet3 invert(const Jet3& f, double x) {
  const double r = 1.0 / f.c1;
  const double r3 = r * r * r;
  return {x, r, -f.c2 * r3, (2.0 * f.c2 * f.c2 - f.c1 * f.c3) * r3 * r * r};
}

}  // namespace bistab
