#include <algorithm>
#include <cmath>

#include "bistab/function.hpp"

namespace bistab {

namespace {

constexpr int kLogPoints = 2048;
constexpr double kLogLo = 1e-4;
constexpr double kLogHi = 1e4;
constexpr int kNearZeroPoints = 64;
constexpr int kUniformPoints = 2048;
constexpr int kCompactPoints = 256;

}  // namespace

std::vector<double> sampling_grid(const Interval& domain) {
  std::vector<double> pts;
  pts.reserve(2 * kLogPoints + 2 * kNearZeroPoints + kUniformPoints + 2 * kCompactPoints);
  auto add = [&](double x) {
    if (std::isfinite(x) && domain.contains(x)) pts.push_back(x);
  };

  const double log_step = std::log10(kLogHi / kLogLo) / (kLogPoints - 1);
  for (int k = 0; k < kLogPoints; ++k) {
    const double x = kLogLo * std::pow(10.0, k * log_step);
    add(x);
    add(-x);
  }
  for (int k = 0; k < kNearZeroPoints; ++k) {
    const double x = kLogLo * k / (kNearZeroPoints - 1);
    add(x);
    add(-x);
  }
  if (domain.bounded()) {
    const double width = domain.hi - domain.lo;
    for (int k = 0; k < kUniformPoints; ++k) add(domain.lo + width * (k + 0.5) / kUniformPoints);
  }
  // Tails through the compactification u = x / (1 + x), u uniform.
  if (!std::isfinite(domain.hi)) {
    const double origin = std::isfinite(domain.lo) ? domain.lo : 0.0;
    for (int k = 0; k < kCompactPoints; ++k) {
      const double u = (k + 0.5) / kCompactPoints;
      add(origin + u / (1.0 - u));
    }
  }
  if (!std::isfinite(domain.lo)) {
    const double origin = std::isfinite(domain.hi) ? domain.hi : 0.0;
    for (int k = 0; k < kCompactPoints; ++k) {
      const double u = (k + 0.5) / kCompactPoints;
      add(origin - u / (1.0 - u));
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace bistab
