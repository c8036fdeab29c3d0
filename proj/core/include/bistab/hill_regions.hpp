#pragma once

#include <string_view>

namespace bistab {

enum class HillBranch { empty, both_positive, lambda1_zero, both_zero };

std::string_view to_string(HillBranch b) noexcept;

/// (1 - sqrt(l)) / (1 + sqrt(l)).
double hill_phi(double lambda) noexcept;

/// Closed-form description of the set where |x g'/g| |y f'/f| > 1 for unit-threshold shifted
/// Hill functions f (lambda1, exponent a, acting on y) and g (lambda2, exponent b, acting on x).
///
/// When lambda1 > 0 and lambda2 = 0 the roles of f and g are exchanged internally; `swapped` is
/// set and every accessor still speaks about the original (x, y).
struct HillRegionParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double a = 1.0;
  double b = 1.0;
  double rho = 0.0;
  HillBranch branch = HillBranch::empty;
  bool swapped = false;
  /// Bounds of the projections of the region; +inf marks an unbounded side.
  double x_minus = 0.0;
  double x_plus = 0.0;
  double y_minus = 0.0;
  double y_plus = 0.0;

  bool empty() const noexcept { return branch == HillBranch::empty; }

  /// Coefficient alpha(x) of the quadratic in y^a (both_positive branch; lambda1 > 0).
  double alpha_coef(double x) const;
  /// Coefficient beta(y) of the quadratic in x^b (lambda2 > 0).
  double beta_coef(double y) const;
  /// For x in (x_minus, x_plus): the region's vertical section is (r_minus(x), r_plus(x)).
  double r_minus(double x) const;
  double r_plus(double x) const;
  /// For y in (y_minus, y_plus): the horizontal section is (s_minus(y), s_plus(y)).
  double s_minus(double y) const;
  double s_plus(double y) const;

  bool contains(double x, double y) const;
};

/// Throws ConfigError unless lambda1, lambda2 are in [0, 1) and a, b >= 1.
HillRegionParams hill_region_closed_form(double lambda1, double lambda2, double a, double b);

enum class SymmetricKind { empty, alpha_half_line, alpha_interval, beta_interval };

std::string_view to_string(SymmetricKind k) noexcept;

/// Image of the diagonal saddle set for the symmetric system with f = g a shifted Hill function:
/// the open interval (lo, hi) of alpha = beta values giving bistability.
struct SymmetricInterval {
  SymmetricKind kind = SymmetricKind::empty;
  double lo = 0.0;
  double hi = 0.0;
  /// ((a - 1) / (a + 1))^2 and its reciprocal: bistability needs lambda outside (lambda0_minus, lambda0_plus).
  double lambda0_minus = 0.0;
  double lambda0_plus = 0.0;

  bool empty() const noexcept { return kind == SymmetricKind::empty; }
  bool contains(double alpha) const noexcept { return !empty() && alpha > lo && alpha < hi; }
};

/// Throws ConfigError for a <= 1, lambda < 0, lambda = 1 or z0 <= 0.
SymmetricInterval symmetric_region(double lambda, double a, double z0);

}  // namespace bistab
