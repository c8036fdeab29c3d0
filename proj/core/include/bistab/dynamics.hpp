#pragma once

#include <optional>
#include <vector>

#include "bistab/contour.hpp"
#include "bistab/equilibria.hpp"
#include "bistab/function.hpp"

namespace bistab {

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  /// Index into the equilibrium set the trajectory settled on; empty when t_max was reached.
  std::optional<std::size_t> terminal;
  /// Step actually used (after any halving).
  double step = 0.0;
};

struct IntegrateOptions {
  double t_max = 200.0;
  double dt = 1e-2;
  /// Early stop when within tol (1 + largest equilibrium coordinate) of an equilibrium...
  double settle_tol = 1e-9;
  /// ...for this many consecutive steps.
  int settle_steps = 10;
  std::size_t max_samples = 10000;
  /// Halvings of dt tried when a step produces a negative coordinate.
  int max_halvings = 6;
};

/// Classic RK4 with a fixed step. Throws StepSizeError if a negative coordinate persists
/// after all halvings.
Trajectory integrate(const SystemSpec& spec, double x0, double y0, const EquilibriumSet& equilibria,
                     const IntegrateOptions& options = {});
/// Same, locating the equilibria first.
Trajectory integrate(const SystemSpec& spec, double x0, double y0, double t_max = 200.0, double dt = 1e-2);

struct Separatrix {
  /// Stable manifold of the saddle, ordered by increasing x.
  Polyline curve;
  Equilibrium saddle;
  EquilibriumSet equilibria;
  /// Equilibrium indices reached from points above / below the curve.
  std::size_t above = 0;
  std::size_t below = 0;
  /// Size of the box [0, alpha sup f] x [0, beta sup g]; offsets are relative to it.
  double scale = 1.0;
  bool increasing = true;

  /// +1 above the curve, -1 below, 0 on it. Beyond the x-extent the curve is continued by the
  /// side of the box it leaves through.
  int side_of(double x, double y) const;
  /// Equilibrium index associated with the side of (x, y).
  std::size_t label_of(double x, double y) const { return side_of(x, y) >= 0 ? above : below; }
};

/// Throws NotBistableError without a saddle, ConsistencyError for a tangent saddle.
Separatrix compute_separatrix(const SystemSpec& spec);

struct BasinProbeReport {
  std::size_t probes = 0;
  std::size_t agree = 0;
  /// Disagreeing probes farther than the offset from the saddle.
  std::size_t far_failures = 0;
  double offset = 0.0;
  double agreement() const noexcept { return probes ? static_cast<double>(agree) / probes : 1.0; }
};

/// Offsets n points normal to the separatrix by +-1e-3 scale (alternating), integrates them and
/// compares the equilibrium reached with the side label.
BasinProbeReport basin_probe(const SystemSpec& spec, const Separatrix& sep, std::size_t n_probes,
                             double relative_offset = 1e-3);

}  // namespace bistab
