#pragma once

#include <string_view>
#include <vector>

#include "bistab/convexity.hpp"
#include "bistab/fixed_point.hpp"
#include "bistab/function.hpp"

namespace bistab {

/// x_1' = f_1(x_n) - x_1,  x_i' = f_i(x_{i-1}) - x_i  for i = 2..n.
struct CyclicSpec {
  std::vector<InteractionFunction> functions;

  std::size_t decreasing_count() const noexcept;
};

enum class CyclicStability { stable, unstable, indeterminate };
std::string_view to_string(CyclicStability s) noexcept;

struct CyclicEquilibrium {
  std::vector<double> x;  // x_1 .. x_n
  /// f_1'(x_n) f_2'(x_1) ... f_n'(x_{n-1}).
  double derivative_product = 0.0;
  /// Largest real part among the roots of (X + 1)^n = derivative_product.
  double dominant_real = 0.0;
  CyclicStability stability = CyclicStability::indeterminate;
};

struct CyclicResult {
  std::vector<CyclicEquilibrium> equilibria;  // sorted by x_n
  std::size_t decreasing_count = 0;
};

/// Equilibria through the fixed points of f_n o ... o f_1. Throws ConfigError when n < 2, when a
/// member cannot take non-negative inputs, or when the composite is unbounded; ConsistencyError
/// when an odd number of decreasing members does not give exactly one equilibrium.
CyclicResult cyclic_equilibria(const CyclicSpec& spec, const FixedPointOptions& options = {},
                               double tangency_tol = 1e-9);

enum class CyclicVerdict { at_most_bistable, unique_equilibrium, no_guarantee };
std::string_view to_string(CyclicVerdict v) noexcept;

struct CyclicCertificate {
  CyclicVerdict verdict = CyclicVerdict::no_guarantee;
  std::size_t decreasing_count = 0;
  std::vector<Verdict> members;
  /// Number of equilibria found while checking the guarantee.
  std::size_t count = 0;
};

/// at_most_bistable: every member gamma^{1/2}-convex, one strictly, even decreasing count.
/// unique_equilibrium: odd decreasing count, or every member gamma^{1/2}-concave with one strictly.
/// The equilibrium count is checked against the guarantee (CertificationViolation otherwise).
CyclicCertificate cyclic_certificate(const CyclicSpec& spec);

}  // namespace bistab
