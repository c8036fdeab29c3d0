#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "bistab/contour.hpp"
#include "bistab/equilibria.hpp"
#include "bistab/function.hpp"
#include "bistab/hill_regions.hpp"

namespace bistab {

/// |x f'(x) / f(x)|.
double log_slope(const InteractionFunction& f, double x);

struct LogSlopeSup {
  double value = 0.0;
  double argmax = 0.0;
  /// The supremum is approached at an end of the domain rather than attained inside.
  bool tail_limit = false;
};

LogSlopeSup sup_log_slope(const InteractionFunction& f);

/// The set of (x, y) in the open quadrant where |x g'(x)/g(x)| |y f'(y)/f(y)| > 1.
class E1Region {
 public:
  E1Region(InteractionFunction f, InteractionFunction g, GridField grid, std::vector<Polyline> boundary,
           bool empty);

  double product(double x, double y) const;
  bool contains(double x, double y) const { return product(x, y) > 1.0; }
  bool empty() const noexcept { return empty_; }
  const std::vector<Polyline>& boundary() const noexcept { return boundary_; }
  const GridField& grid() const noexcept { return grid_; }
  const InteractionFunction& f() const noexcept { return f_; }
  const InteractionFunction& g() const noexcept { return g_; }

  /// Whether some grid node on the given side of the sampled box lies in the region.
  bool touches_x_lo() const noexcept { return touches_[0]; }
  bool touches_x_hi() const noexcept { return touches_[1]; }
  bool touches_y_lo() const noexcept { return touches_[2]; }
  bool touches_y_hi() const noexcept { return touches_[3]; }

 private:
  InteractionFunction f_;
  InteractionFunction g_;
  GridField grid_;
  std::vector<Polyline> boundary_;
  bool empty_;
  bool touches_[4] = {false, false, false, false};
};

/// Level-1 contour on an n x n grid of the compactified quadrant x = u / (1 - u),
/// u = (i + 1/2) / n. Empty when sup_log_slope(f) sup_log_slope(g) <= 1.
E1Region e1_region(const SystemSpec& spec, int grid = 512);

enum class Provenance { closed_form_hill, numeric_contour, symmetric_interval };
std::string_view to_string(Provenance p) noexcept;

enum class Membership { inside, outside, band, out_of_window };
std::string_view to_string(Membership m) noexcept;

/// Image of the E1 region in (alpha, beta) space under (x, y) -> (x / f(y), y / g(x)).
class RegionBoundary {
 public:
  struct Index;

  std::vector<Polyline> curves;
  Provenance provenance = Provenance::numeric_contour;
  /// Half-width of the undecided band, in natural-log units of (alpha, beta).
  double indeterminate_band = 1e-3;

  /// Membership of (alpha, beta) in the mapped region. out_of_window means the saddle that
  /// (alpha, beta) would have could lie outside the sampled box.
  Membership classify(double alpha, double beta) const;

  std::shared_ptr<const Index> index;
};

/// Throws ConfigError when the region is empty.
RegionBoundary map_G1(const E1Region& region, const SystemSpec& spec, double band = 1e-3);

enum class ParameterClass { monostable, bistable, indeterminate };
std::string_view to_string(ParameterClass c) noexcept;

struct Classification {
  ParameterClass cls = ParameterClass::indeterminate;
  int count = 0;
  /// min |jac_product - 1| over the equilibria.
  double min_jac_gap = 0.0;
  /// Closed-form membership of the equilibria, when a Hill closed form applies.
  std::optional<bool> closed_form_bistable;
};

struct ClassifyOptions {
  EquilibriaOptions equilibria;
  /// Compare with the Hill closed form when f and g are shifted Hill functions with lambda < 1.
  bool closed_form_check = true;
  /// Disagreements with the closed form are tolerated when min_jac_gap is within this band.
  double band = 1e-3;
};

/// Root count decides: 1 equilibrium is monostable, 3 or more (odd) bistable; a tangent
/// equilibrium makes the point indeterminate. Throws ConsistencyError when the closed form
/// disagrees off the band.
Classification classify_parameters(const SystemSpec& spec, const ClassifyOptions& options = {});

struct SweepResult {
  std::vector<double> alphas;
  std::vector<double> betas;
  /// cells[ia * betas.size() + ib].
  std::vector<Classification> cells;

  const Classification& at(std::size_t ia, std::size_t ib) const { return cells[ia * betas.size() + ib]; }
};

/// classify_parameters over the grid, in parallel; identical output for any thread count.
SweepResult region_sweep(const InteractionFunction& f, const InteractionFunction& g,
                         const std::vector<double>& alphas, const std::vector<double>& betas,
                         const ClassifyOptions& options = {}, unsigned threads = 0);

struct SymmetricSweepResult {
  std::vector<double> lambdas;
  std::vector<double> alphas;
  std::vector<Classification> cells;  // cells[il * alphas.size() + ia]

  const Classification& at(std::size_t il, std::size_t ia) const { return cells[il * alphas.size() + ia]; }
};

/// Classification of the symmetric system f = g = hill(lambda, a, z0), alpha = beta.
SymmetricSweepResult symmetric_sweep(double a, double z0, const std::vector<double>& lambdas,
                                     const std::vector<double>& alphas, unsigned threads = 0);

/// Evenly spaced values; logarithmic spacing requires 0 < lo.
std::vector<double> make_grid(double lo, double hi, std::size_t n, bool logarithmic);

}  // namespace bistab
