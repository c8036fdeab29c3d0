#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bistab/dynamics.hpp"
#include "bistab/regions.hpp"

namespace bistab {

/// Header `alpha,beta,class,count,min_jac_gap`, alpha-major rows.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
/// Header `lambda,alpha,class,count,min_jac_gap`, lambda-major rows.
void write_symmetric_csv(std::ostream& out, const SymmetricSweepResult& sweep);
/// Header `t,x,y`.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
/// Header `x,y`.
void write_polyline_csv(std::ostream& out, const Polyline& line);
/// Header `curve,alpha,beta`; one block of rows per curve.
void write_region_csv(std::ostream& out, const std::vector<Polyline>& curves);

/// Self-contained SVG (viewBox 0 0 1000 1000, paths only): nullclines, equilibria, separatrix
/// and trajectories of the phase plane.
std::string phase_plane_svg(const SystemSpec& spec, const EquilibriumSet& equilibria,
                            const Separatrix* separatrix = nullptr,
                            const std::vector<Trajectory>& trajectories = {});

/// Log-log map of a sweep: bistable cells filled, indeterminate cells outlined, optional
/// region curves drawn on top.
std::string sweep_svg(const SweepResult& sweep, const std::vector<Polyline>& curves = {});

}  // namespace bistab
