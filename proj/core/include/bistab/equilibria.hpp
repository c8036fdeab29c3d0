#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bistab/fixed_point.hpp"
#include "bistab/function.hpp"

namespace bistab {

enum class Stability { stable, saddle, indeterminate };

std::string_view to_string(Stability s) noexcept;

/// Band around jac_product = 1 inside which stability is not decided.
inline constexpr double kTangencyTol = 1e-9;

Stability classify_jacobian(double jac_product, double tol = kTangencyTol) noexcept;

struct Equilibrium {
  double x_bar = 0.0;
  double y_bar = 0.0;
  /// alpha beta f'(y_bar) g'(x_bar), the derivative of F at x_bar.
  double jac_product = 0.0;
  Stability stability = Stability::indeterminate;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct EquilibriumSet {
  std::vector<Equilibrium> equilibria;  // sorted by x_bar
  bool count_certified = false;
  Orientation ordering = Orientation::competitive;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return equilibria.size(); }
  bool has_indeterminate() const noexcept;
  /// min over equilibria of |jac_product - 1|; +inf when empty.
  double min_jac_gap() const noexcept;
};

struct EquilibriaOptions {
  FixedPointOptions search;
  double tangency_tol = kTangencyTol;
  /// Known outcome of the gamma^{1/2} pair certificate; computed when absent.
  std::optional<bool> certified;
};

/// Upper end of the search window for fixed points of x -> alpha f(beta g(x)).
double fixed_point_bound(const SystemSpec& spec);

/// All equilibria of the system, through the fixed points of F(x) = alpha f(beta g(x)).
/// Throws CertificationViolation when a certified pair yields more than three.
EquilibriumSet find_equilibria(const SystemSpec& spec, const EquilibriaOptions& options = {});

struct AlternationReport {
  bool ok = true;
  int stable = 0;
  int saddle = 0;
  std::vector<std::string> violations;
};

/// Stable and saddle equilibria must alternate along x, starting and ending stable.
AlternationReport alternation_check(const EquilibriumSet& set);

/// Brute-force count of sign changes of F(x) - x on grid_n uniform plus grid_n logarithmic points.
int count_fixed_points_oracle(const InteractionFunction& f, const InteractionFunction& g, double alpha,
                              double beta, int grid_n);

}  // namespace bistab
