#include "bistab/function.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "bistab/errors.hpp"

namespace bistab {

bool Interval::covers(const Interval& other) const noexcept {
  const bool lo_ok = other.lo > lo || (other.lo == lo && (lo_closed || !other.lo_closed));
  const bool hi_ok = other.hi < hi || (other.hi == hi && (hi_closed || !other.hi_closed));
  return lo_ok && hi_ok;
}

InteractionFunction::InteractionFunction(Traits traits, JetKernel jet, ValueKernel value)
    : traits_(std::move(traits)), jet_(std::move(jet)), value_(std::move(value)) {}

namespace {

/// f at x, or its one-sided limit when x sits on (or beyond) an open end of the domain.
double value_or_limit(const InteractionFunction& f, double x) {
  const Interval& d = f.domain();
  if (x <= d.lo) return d.lo_closed ? f.value(d.lo) : f.limit_lo();
  if (x >= d.hi) return d.hi_closed ? f.value(d.hi) : f.limit_hi();
  return f.value(x);
}

double at_zero(const InteractionFunction& f) { return value_or_limit(f, 0.0); }

}  // namespace

Interval InteractionFunction::range() const noexcept {
  const Interval& d = traits_.domain;
  if (increasing()) return {traits_.limit_lo, traits_.limit_hi, d.lo_closed, d.hi_closed};
  return {traits_.limit_hi, traits_.limit_lo, d.hi_closed, d.lo_closed};
}

Interval InteractionFunction::image(const Interval& input) const {
  const double lo = std::max(input.lo, traits_.domain.lo);
  const double hi = std::min(input.hi, traits_.domain.hi);
  if (lo > hi) throw ConfigError(fmt::format("input interval misses the domain of {}", name()));
  const double a = value_or_limit(*this, lo);
  const double b = value_or_limit(*this, hi);
  return {std::min(a, b), std::max(a, b), std::isfinite(std::min(a, b)), std::isfinite(std::max(a, b))};
}

double InteractionFunction::sup_on(double upper) const {
  if (!increasing()) return at_zero(*this);
  return value_or_limit(*this, upper);
}

// ---------------------------------------------------------------------------------------------

InteractionFunction make_hill(double lambda, double a, double z0) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ConfigError(fmt::format("hill: lambda must be finite and >= 0, got {}", lambda));
  if (lambda == 1.0) throw ConfigError("hill: lambda = 1 gives a constant function");
  if (!(a >= 1.0) || !std::isfinite(a))
    throw ConfigError(fmt::format("hill: exponent a must be >= 1, got {}", a));
  if (!(z0 > 0.0) || !std::isfinite(z0))
    throw ConfigError(fmt::format("hill: threshold z0 must be > 0, got {}", z0));

  InteractionFunction::Traits t;
  t.name = fmt::format("hill({},{},{})", lambda, a, z0);
  t.family = Family::hill;
  t.params = HillParams{lambda, a, z0};
  t.domain = Interval::nonnegative();
  t.monotonicity = lambda < 1.0 ? Monotonicity::decreasing : Monotonicity::increasing;
  t.bounded = true;
  t.limit_lo = 1.0;
  t.limit_hi = lambda;
  // (1 + l w) / (1 + w) = l + (1 - l) / (1 + w) stays finite when w overflows.
  auto jet = [=](const Jet3& u) {
    const Jet3 w = pow(u * (1.0 / z0), a);
    return lambda + (1.0 - lambda) * (1.0 / (1.0 + w));
  };
  auto value = [=](double x) {
    const double w = std::pow(x / z0, a);
    return lambda + (1.0 - lambda) / (1.0 + w);
  };
  return {std::move(t), jet, value};
}

namespace {

double sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

double softplus(double v) { return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

/// log(1 + e^v) on a jet; its derivatives are sigma, sigma (1 - sigma), ...
Jet3 softplus(const Jet3& u) {
  const double s = sigmoid(u.c0);
  const double sc = sigmoid(-u.c0);
  const double d2 = s * sc;
  return apply_kernel(u, softplus(u.c0), s, d2, d2 * (sc - s));
}

InteractionFunction::Traits sigmoid_traits(std::string name, Family family, double limit) {
  InteractionFunction::Traits t;
  t.name = std::move(name);
  t.family = family;
  t.domain = Interval::real_line();
  t.monotonicity = Monotonicity::increasing;
  t.bounded = true;
  t.limit_lo = -limit;
  t.limit_hi = limit;
  return t;
}

}  // namespace

InteractionFunction make_logistic(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ConfigError(fmt::format("logistic: alpha must be > 0, got {}", alpha));
  auto t = sigmoid_traits(fmt::format("logistic({})", alpha), Family::logistic, 1.0);
  t.params = LogisticParams{alpha};
  t.limit_lo = 0.0;
  // sigma(x)^alpha = exp(-alpha log(1 + e^{-x})).
  auto jet = [=](const Jet3& u) { return exp(-alpha * softplus(-u)); };
  auto value = [=](double x) { return std::exp(-alpha * softplus(-x)); };
  return {std::move(t), jet, value};
}

InteractionFunction make_tanh() {
  return {sigmoid_traits("tanh", Family::tanh, 1.0), [](const Jet3& u) { return tanh(u); },
          [](double x) { return std::tanh(x); }};
}

InteractionFunction make_atan() {
  return {sigmoid_traits("atan", Family::atan, std::numbers::pi / 2),
          [](const Jet3& u) { return atan(u); }, [](double x) { return std::atan(x); }};
}

InteractionFunction make_gudermannian() {
  return {sigmoid_traits("gd", Family::gudermannian, std::numbers::pi / 2),
          [](const Jet3& u) { return gd(u); }, [](double x) { return std::atan(std::sinh(x)); }};
}

InteractionFunction make_erf() {
  return {sigmoid_traits("erf", Family::erf, 1.0), [](const Jet3& u) { return erf(u); },
          [](double x) { return std::erf(x); }};
}

InteractionFunction make_power(double nu) {
  if (nu == 0.0 || !std::isfinite(nu))
    throw ConfigError(fmt::format("power: exponent must be finite and non-zero, got {}", nu));
  InteractionFunction::Traits t;
  t.name = fmt::format("power({})", nu);
  t.family = Family::power;
  t.params = PowerParams{nu};
  t.domain = Interval::positive();
  t.monotonicity = nu > 0.0 ? Monotonicity::increasing : Monotonicity::decreasing;
  t.bounded = false;
  t.limit_lo = nu > 0.0 ? 0.0 : kInf;
  t.limit_hi = nu > 0.0 ? kInf : 0.0;
  return {std::move(t), [=](const Jet3& u) { return pow(u, nu); },
          [=](double x) { return std::pow(x, nu); }};
}

// ---------------------------------------------------------------------------------------------

namespace {

std::optional<double> try_eval(const Expr& e, double x) {
  try {
    return eval(e, x);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

/// Limit of a custom expression toward one end of its domain. `far` and `farther` are two probe
/// points approaching the end; a value still moving between them counts as divergence.
double probe_limit(const Expr& e, double far, double farther, bool rising) {
  const auto v1 = try_eval(e, far);
  const auto v2 = try_eval(e, farther);
  const double inf = rising ? kInf : -kInf;
  if (!v1 || !v2) return inf;
  if (std::abs(*v2 - *v1) > 1e-3 * (1.0 + std::abs(*v1))) return inf;
  return *v2;
}

}  // namespace

InteractionFunction make_custom(const Expr& expr, std::optional<Interval> domain, std::string name) {
  if (!domain) domain = try_eval(expr, 0.0) ? Interval::nonnegative() : Interval::positive();
  if (name.empty()) name = "expr:" + expr.to_string();

  // Classify every sample by the sign of f'. Failed or flat samples may only form runs at the
  // two ends of the grid, where they come from overflow or saturation.
  const auto grid = sampling_grid(*domain);
  if (grid.empty()) throw ConfigError(fmt::format("{}: empty domain", name));
  std::vector<int> sign(grid.size(), 0);
  std::vector<bool> failed(grid.size(), false);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      const Jet3 j = eval_jet3(expr, grid[i]);
      sign[i] = j.c1 > 0.0 ? 1 : (j.c1 < 0.0 ? -1 : 0);
    } catch (const DomainError&) {
      failed[i] = true;
    }
  }
  std::size_t first = 0;
  while (first < grid.size() && sign[first] == 0) ++first;
  std::size_t last = grid.size();
  while (last > first && sign[last - 1] == 0) --last;
  if (first == last) throw ConfigError(fmt::format("{}: constant on its domain", name));
  for (std::size_t i = first; i < last; ++i) {
    if (failed[i])
      throw ConfigError(fmt::format("{}: not defined at x = {} inside its domain", name, grid[i]));
    if (sign[i] != sign[first])
      throw ConfigError(fmt::format("{}: not strictly monotone on its domain (f' = 0 or sign change near x = {})",
                                    name, grid[i]));
  }
  const bool inc = sign[first] > 0;

  InteractionFunction::Traits t;
  t.name = std::move(name);
  t.family = Family::custom;
  t.params = expr;
  t.domain = *domain;
  t.monotonicity = inc ? Monotonicity::increasing : Monotonicity::decreasing;

  const Interval& d = *domain;
  if (std::isinf(d.lo)) {
    t.limit_lo = probe_limit(expr, -1e6, -1e12, !inc);
  } else if (d.lo_closed) {
    t.limit_lo = eval(expr, d.lo);
  } else {
    const double s = std::max(1.0, std::abs(d.lo));
    t.limit_lo = probe_limit(expr, d.lo + 1e-6 * s, d.lo + 1e-12 * s, !inc);
  }
  if (std::isinf(d.hi)) {
    t.limit_hi = probe_limit(expr, 1e6, 1e12, inc);
  } else if (d.hi_closed) {
    t.limit_hi = eval(expr, d.hi);
  } else {
    const double s = std::max(1.0, std::abs(d.hi));
    t.limit_hi = probe_limit(expr, d.hi - 1e-6 * s, d.hi - 1e-12 * s, inc);
  }
  t.bounded = std::isfinite(t.limit_lo) && std::isfinite(t.limit_hi);

  auto jet = [expr](const Jet3& u) { return eval_jet3(expr, u); };
  auto value = [expr](double x) { return eval(expr, x); };
  return {std::move(t), jet, value};
}

InteractionFunction compose(const InteractionFunction& outer, const InteractionFunction& inner) {
  if (!outer.domain().covers(inner.range()))
    throw ConfigError(fmt::format("cannot compose {} o {}: range of the inner function leaves the outer domain",
                                  outer.name(), inner.name()));
  InteractionFunction::Traits t;
  t.name = fmt::format("{} o {}", outer.name(), inner.name());
  t.family = Family::composite;
  t.domain = inner.domain();
  t.monotonicity = outer.increasing() == inner.increasing() ? Monotonicity::increasing
                                                            : Monotonicity::decreasing;
  t.limit_lo = value_or_limit(outer, inner.limit_lo());
  t.limit_hi = value_or_limit(outer, inner.limit_hi());
  t.bounded = std::isfinite(t.limit_lo) && std::isfinite(t.limit_hi);
  auto jet = [outer, inner](const Jet3& u) { return outer.jet(inner.jet(u)); };
  auto value = [outer, inner](double x) { return outer.value(inner.value(x)); };
  return {std::move(t), jet, value};
}

InteractionFunction scaled(const InteractionFunction& f, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw ConfigError(fmt::format("gain must be finite and > 0, got {}", factor));
  auto t = f.traits();
  t.name = fmt::format("{}*{}", factor, f.name());
  t.limit_lo *= factor;
  t.limit_hi *= factor;
  t.gain *= factor;
  auto jet = [f, factor](const Jet3& u) { return factor * f.jet(u); };
  auto value = [f, factor](double x) { return factor * f.value(x); };
  return {std::move(t), jet, value};
}

InteractionFunction restricted(const InteractionFunction& f, const Interval& window) {
  if (!f.domain().covers(window))
    throw ConfigError(fmt::format("{}: window is not inside the domain", f.name()));
  auto t = f.traits();
  t.domain = window;
  t.limit_lo = value_or_limit(f, window.lo);
  t.limit_hi = value_or_limit(f, window.hi);
  t.bounded = std::isfinite(t.limit_lo) && std::isfinite(t.limit_hi);
  return {std::move(t), [f](const Jet3& u) { return f.jet(u); }, [f](double x) { return f.value(x); }};
}

InteractionFunction make_inverse(const InteractionFunction& f, const Interval& window) {
  if (!window.bounded() || !(window.lo < window.hi))
    throw ConfigError("inverse: window must be a bounded non-degenerate interval");
  if (!f.domain().covers({window.lo, window.hi, true, true}))
    throw ConfigError(fmt::format("inverse: window is not inside the domain of {}", f.name()));
  const double xlo = window.lo;
  const double xhi = window.hi;
  const double ylo = f.value(xlo);
  const double yhi = f.value(xhi);
  const bool inc = f.increasing();

  InteractionFunction::Traits t;
  t.name = fmt::format("inverse({})", f.name());
  t.family = Family::inverse;
  t.domain = {std::min(ylo, yhi), std::max(ylo, yhi), true, true};
  t.monotonicity = f.monotonicity();
  t.bounded = true;
  t.limit_lo = inc ? xlo : xhi;
  t.limit_hi = inc ? xhi : xlo;

  auto solve = [f, xlo, xhi, inc, name = t.name, dom = t.domain](double y) {
    if (!dom.contains(y)) throw DomainError(name, y, "argument outside the range of the inverted function");
    double lo = xlo;
    double hi = xhi;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double v = f.value(mid);
      if (v == y) return mid;
      if ((v < y) == inc) lo = mid;
      else hi = mid;
    }
    return std::abs(f.value(lo) - y) <= std::abs(f.value(hi) - y) ? lo : hi;
  };
  auto jet = [f, solve](const Jet3& u) {
    const double x = solve(u.c0);
    const Jet3 fx = f.jet(x);
    Jet3 at = invert(fx, x);
    at.c0 = x;
    return compose(at, u);
  };
  return {std::move(t), jet, solve};
}

std::vector<InteractionFunction> catalog_sigmoids() {
  return {make_logistic(0.5), make_logistic(1.0), make_logistic(2.0), make_tanh(),
          make_atan(),        make_gudermannian(), make_erf()};
}

// ---------------------------------------------------------------------------------------------

void validate(const SystemSpec& spec) {
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha))
    throw ConfigError(fmt::format("alpha must be finite and > 0, got {}", spec.alpha));
  if (!(spec.beta > 0.0) || !std::isfinite(spec.beta))
    throw ConfigError(fmt::format("beta must be finite and > 0, got {}", spec.beta));
  if (spec.f.monotonicity() != spec.g.monotonicity())
    throw ConfigError(fmt::format("f = {} and g = {} must be both increasing or both decreasing",
                                  spec.f.name(), spec.g.name()));
  if (!spec.f.bounded() && !spec.g.bounded())
    throw ConfigError("at least one of f and g must be bounded");
  for (const auto* fn : {&spec.f, &spec.g}) {
    if (!fn->domain().covers(Interval::positive()))
      throw ConfigError(fmt::format("{} is not defined on (0, inf)", fn->name()));
    const double inf_value = fn->increasing() ? at_zero(*fn) : fn->limit_hi();
    if (!(inf_value >= 0.0))
      throw ConfigError(fmt::format("{} takes negative values on the non-negative half-line", fn->name()));
  }
}

SystemSpec rescale_to_unit(const SystemSpec& spec) {
  const auto* hf = std::get_if<HillParams>(&spec.f.params());
  const auto* hg = std::get_if<HillParams>(&spec.g.params());
  if (spec.f.family() != Family::hill || spec.g.family() != Family::hill || !hf || !hg)
    throw ConfigError("rescaling to unit thresholds needs Hill functions for both f and g");
  // f acts on y (threshold z01), g on x (threshold z02).
  return {make_hill(hf->lambda, hf->a, 1.0), make_hill(hg->lambda, hg->a, 1.0),
          spec.alpha * spec.f.traits().gain / hg->z0, spec.beta * spec.g.traits().gain / hf->z0};
}

}  // namespace bistab
