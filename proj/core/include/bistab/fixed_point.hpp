#pragma once

#include <functional>
#include <vector>

#include "bistab/function.hpp"

namespace bistab {

struct FixedPoint {
  double x = 0.0;
  /// Bracket that isolated the root; collapses to {x, x} for exact and tangent hits.
  double lo = 0.0;
  double hi = 0.0;
  /// Found as a local extremum of F(x) - x touching zero, without a sign change.
  bool tangent = false;
};

struct FixedPointOptions {
  int linear_points = 2048;
  int log_points = 2048;
  /// Smallest log-grid point as a fraction of the search interval's upper end.
  double log_floor = 1e-12;
  /// Subdivision used when a local minimum of |F(x) - x| is re-examined.
  int tangency_refinement = 4;
};

/// All fixed points of a continuous map on `interval` (bounded), sorted by x.
///
/// Roots are bracketed by sign changes of F(x) - x on a linear + logarithmic grid and polished
/// by bisection until the bracket cannot shrink. Local minima of |F(x) - x| without a sign
/// change are searched for a hidden pair of roots or a tangency.
std::vector<FixedPoint> find_fixed_points(const std::function<double(double)>& map,
                                          const Interval& interval,
                                          const FixedPointOptions& options = {});

}  // namespace bistab
