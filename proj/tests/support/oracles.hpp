#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

/// Central difference of order 1..3 with step h.
inline double central(const Fn& f, double x, int order, double h) {
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2 * h);
    case 2:
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    default:
      return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
  }
}

/// Two Richardson levels on top of the O(h^2) central differences.
inline double richardson(const Fn& f, double x, int order, double h) {
  const double d1 = central(f, x, order, h);
  const double d2 = central(f, x, order, h / 2);
  const double d4 = central(f, x, order, h / 4);
  const double r1 = (4 * d2 - d1) / 3;
  const double r2 = (4 * d4 - d2) / 3;
  return (16 * r2 - r1) / 15;
}

/// Sign changes of F(x) - x on n uniform points of [0, hi] plus n log-spaced points down to
/// hi * 1e-12. Zero samples are skipped.
inline int count_fixed_points(const Fn& F, double hi, int n) {
  std::vector<double> xs;
  xs.reserve(2 * static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) xs.push_back(hi * i / n);
  const double l0 = std::log(hi * 1e-12), l1 = std::log(hi);
  for (int i = 0; i < n; ++i) xs.push_back(std::exp(l0 + (l1 - l0) * i / (n - 1)));
  std::sort(xs.begin(), xs.end());
  int changes = 0;
  int last = 0;
  for (double x : xs) {
    const double h = F(x) - x;
    const int s = h > 0 ? 1 : (h < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline double hill(double lambda, double a, double z0, double z) {
  const double w = std::pow(z / z0, a);
  return (1 + lambda * w) / (1 + w);
}

/// |z h'(z) / h(z)| for the shifted Hill function, from its closed-form derivative.
inline double hill_log_slope(double lambda, double a, double z0, double z) {
  const double w = std::pow(z / z0, a);
  return std::abs(a * w * (lambda - 1) / ((1 + w) * (1 + lambda * w)));
}

/// Forward RK4 of x' = alpha f(y) - x, y' = beta g(x) - y.
struct Rk4 {
  Fn f, g;
  double alpha, beta;
  void step(double& x, double& y, double dt) const {
    auto fx = [&](double xx, double yy) { return alpha * f(yy) - xx; };
    auto fy = [&](double xx, double yy) { return beta * g(xx) - yy; };
    const double k1x = fx(x, y), k1y = fy(x, y);
    const double k2x = fx(x + dt / 2 * k1x, y + dt / 2 * k1y), k2y = fy(x + dt / 2 * k1x, y + dt / 2 * k1y);
    const double k3x = fx(x + dt / 2 * k2x, y + dt / 2 * k2y), k3y = fy(x + dt / 2 * k2x, y + dt / 2 * k2y);
    const double k4x = fx(x + dt * k3x, y + dt * k3y), k4y = fy(x + dt * k3x, y + dt * k3y);
    x += dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
    y += dt / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
  }
};

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& r, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(r);
}

inline double log_uniform(std::mt19937_64& r, double lo, double hi) {
  return std::exp(uniform(r, std::log(lo), std::log(hi)));
}

}  // namespace oracle
