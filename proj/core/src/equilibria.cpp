#include "bistab/equilibria.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bistab/convexity.hpp"
#include "bistab/errors.hpp"

namespace bistab {

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::saddle: return "saddle";
    case Stability::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Stability classify_jacobian(double p, double tol) noexcept {
  if (p < 1.0 - tol) return Stability::stable;
  if (p > 1.0 + tol) return Stability::saddle;
  return Stability::indeterminate;
}

bool EquilibriumSet::has_indeterminate() const noexcept {
  return std::any_of(equilibria.begin(), equilibria.end(),
                     [](const Equilibrium& e) { return e.stability == Stability::indeterminate; });
}

double EquilibriumSet::min_jac_gap() const noexcept {
  double gap = kInf;
  for (const auto& e : equilibria) gap = std::min(gap, std::abs(e.jac_product - 1.0));
  return gap;
}

double fixed_point_bound(const SystemSpec& spec) {
  const double sup_g = spec.g.sup_on(kInf);
  const double sup_f = spec.f.image({0.0, spec.beta * sup_g, true, std::isfinite(sup_g)}).hi;
  const double bound = spec.alpha * sup_f + 1.0;
  if (!std::isfinite(bound))
    throw ConfigError(fmt::format("alpha f(beta g(x)) is unbounded for f = {}, g = {}", spec.f.name(),
                                  spec.g.name()));
  return bound;
}

namespace {

Interval search_interval(const SystemSpec& spec) {
  return {0.0, fixed_point_bound(spec), spec.g.domain().contains(0.0), true};
}

}  // namespace

EquilibriumSet find_equilibria(const SystemSpec& spec, const EquilibriaOptions& options) {
  validate(spec);
  const double alpha = spec.alpha;
  const double beta = spec.beta;
  const auto map = [&](double x) { return alpha * spec.f.value(beta * spec.g.value(x)); };
  const auto points = find_fixed_points(map, search_interval(spec), options.search);

  EquilibriumSet set;
  set.ordering = spec.orientation();
  set.count_certified = options.certified.value_or(
      certified_pair(certify_gamma(spec.f), certify_gamma(spec.g)));
  for (const auto& p : points) {
    Equilibrium e;
    e.x_bar = p.x;
    const Jet3 gj = spec.g.jet(p.x);
    e.y_bar = beta * gj.c0;
    e.jac_product = alpha * beta * spec.f.derivative(e.y_bar) * gj.c1;
    e.stability = p.tangent ? Stability::indeterminate : classify_jacobian(e.jac_product, options.tangency_tol);
    e.bracket_lo = p.lo;
    e.bracket_hi = p.hi;
    if (e.stability == Stability::indeterminate)
      set.warnings.push_back(fmt::format("near-tangency at x = {:.17g} (jac_product = {:.17g})", e.x_bar,
                                         e.jac_product));
    set.equilibria.push_back(e);
  }
  if (set.count_certified && set.size() > 3)
    throw CertificationViolation(fmt::format(
        "{} equilibria found for a certified pair f = {}, g = {}, alpha = {}, beta = {}", set.size(),
        spec.f.name(), spec.g.name(), alpha, beta));
  return set;
}

AlternationReport alternation_check(const EquilibriumSet& set) {
  AlternationReport rep;
  const auto& eq = set.equilibria;
  for (std::size_t i = 0; i < eq.size(); ++i) {
    const auto& e = eq[i];
    if (e.stability == Stability::stable) ++rep.stable;
    if (e.stability == Stability::saddle) ++rep.saddle;
    const Stability expected = i % 2 == 0 ? Stability::stable : Stability::saddle;
    if (e.stability != expected)
      rep.violations.push_back(fmt::format("equilibrium {} in [{}, {}] is {}, expected {}", i, e.bracket_lo,
                                           e.bracket_hi, to_string(e.stability), to_string(expected)));
  }
  if (!eq.empty() && eq.size() % 2 == 0)
    rep.violations.push_back(fmt::format("even number of equilibria ({})", eq.size()));
  if (!eq.empty() && rep.stable != rep.saddle + 1)
    rep.violations.push_back(fmt::format("{} stable against {} saddle equilibria", rep.stable, rep.saddle));
  rep.ok = rep.violations.empty();
  return rep;
}

int count_fixed_points_oracle(const InteractionFunction& f, const InteractionFunction& g, double alpha,
                              double beta, int grid_n) {
  const SystemSpec spec{f, g, alpha, beta};
  const double hi = fixed_point_bound(spec);
  const bool zero_ok = g.domain().contains(0.0);
  std::vector<double> xs;
  xs.reserve(2 * static_cast<std::size_t>(grid_n) + 1);
  for (int i = zero_ok ? 0 : 1; i <= grid_n; ++i) xs.push_back(hi * i / grid_n);
  const double floor = hi * 1e-12;
  for (int i = 0; i < grid_n; ++i) xs.push_back(floor * std::pow(hi / floor, static_cast<double>(i) / (grid_n - 1)));
  std::sort(xs.begin(), xs.end());

  int count = 0;
  int last = 0;
  for (double x : xs) {
    const double h = alpha * f.value(beta * g.value(x)) - x;
    const int s = h > 0.0 ? 1 : (h < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace bistab
