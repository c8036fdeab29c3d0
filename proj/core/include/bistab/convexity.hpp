#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bistab/function.hpp"

namespace bistab {

enum class Verdict {
  strictly_gamma_convex,
  gamma_convex,
  strictly_gamma_concave,
  gamma_concave,
  both,
  neither,
  inconclusive,
};

std::string_view to_string(Verdict v) noexcept;
bool is_convex_class(Verdict v) noexcept;   // strictly_gamma_convex, gamma_convex or both
bool is_concave_class(Verdict v) noexcept;  // strictly_gamma_concave, gamma_concave or both
Verdict dual(Verdict v) noexcept;           // convex <-> concave, the rest unchanged

/// Outcome of the grid test on s(x) = f'(x) f'''(x) - (alpha + 1) f''(x)^2.
struct ConvexityCertificate {
  Verdict verdict = Verdict::inconclusive;
  double alpha_exponent = 0.5;
  /// Sample where the inequality fails (mixed verdicts) or degenerates (non-strict verdicts).
  std::optional<double> witness;
  /// min over the grid of |s| / (1 + |f' f'''|).
  double margin = 0.0;
  std::size_t evaluated = 0;
  /// Samples skipped because the jet is non-finite or numerically flat (f' = 0, underflow).
  std::size_t excluded = 0;
  std::size_t negative = 0;
  std::size_t positive = 0;
};

ConvexityCertificate certify_gamma(const InteractionFunction& f, double alpha_exponent = 0.5);

/// Convex-class with at least one of the two strictly convex.
bool certified_pair(const ConvexityCertificate& f, const ConvexityCertificate& g) noexcept;

struct NonlocalReport {
  std::size_t pairs = 0;
  std::size_t negative = 0;  // d < 0
  std::size_t positive = 0;  // d > 0
  /// Extremes of d = f'(x) f'(y) - ((f(x) - f(y)) / (x - y))^2.
  double max_d = 0.0;
  double min_d = 0.0;
  /// Extremes of d divided by f'(x) f'(y) + secant^2.
  double max_relative = 0.0;
  double min_relative = 0.0;
};

/// Two-point form of the gamma^{1/2} inequality; strict asks for d < 0 on every pair.
NonlocalReport check_nonlocal(const InteractionFunction& f,
                              const std::vector<std::pair<double, double>>& pairs);
bool nonlocal_consistent(const NonlocalReport& r, Verdict v, double tolerance = 1e-10) noexcept;

/// Certificate of outer o inner. Throws ConfigError on a domain mismatch.
ConvexityCertificate certify_composition(const InteractionFunction& outer,
                                         const InteractionFunction& inner);

struct DualityReport {
  ConvexityCertificate function;
  ConvexityCertificate inverse;
  bool dual = false;
};

/// Certifies f on `window` and its bisection inverse, and checks that the verdicts are dual.
/// Without a window the domain of f is used, which must then be bounded.
/// Throws InversionError when f is numerically flat on the window.
DualityReport check_inverse_duality(const InteractionFunction& f,
                                    std::optional<Interval> window = std::nullopt);

}  // namespace bistab
