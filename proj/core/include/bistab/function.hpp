#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bistab/expr.hpp"
#include "bistab/jet.hpp"

namespace bistab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Interval of the real line; each end may be open or closed, and infinite ends are open.
struct Interval {
  double lo = 0.0;
  double hi = kInf;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval nonnegative() { return {0.0, kInf, true, false}; }
  static Interval positive() { return {0.0, kInf, false, false}; }
  static Interval real_line() { return {-kInf, kInf, false, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }

  bool contains(double x) const noexcept {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
  bool bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
  /// True when every point of `other` lies in this interval.
  bool covers(const Interval& other) const noexcept;
};

enum class Monotonicity { increasing, decreasing };

enum class Family { hill, logistic, tanh, atan, gudermannian, erf, power, custom, composite, inverse };

struct HillParams {
  double lambda = 0.0;
  double a = 1.0;
  double z0 = 1.0;
};
struct LogisticParams {
  double alpha = 1.0;
};
struct PowerParams {
  double nu = 1.0;
};
using FamilyParams = std::variant<std::monostate, HillParams, LogisticParams, PowerParams, Expr>;

/// Strictly monotone scalar function with exact Taylor jets up to order three.
///
/// Values are immutable; copies share the underlying evaluators.
class InteractionFunction {
 public:
  using JetKernel = std::function<Jet3(const Jet3&)>;
  using ValueKernel = std::function<double(double)>;

  struct Traits {
    std::string name;
    Family family = Family::custom;
    FamilyParams params;
    Interval domain;
    Monotonicity monotonicity = Monotonicity::increasing;
    bool bounded = false;
    /// Limits of f at the two ends of the domain (one-sided values at closed ends).
    double limit_lo = 0.0;
    double limit_hi = 0.0;
    /// Positive factor applied by `scaled`; the family parameters describe f / gain.
    double gain = 1.0;
  };

  InteractionFunction(Traits traits, JetKernel jet, ValueKernel value);

  /// f evaluated on an input jet: the jet of f(u(t)).
  Jet3 jet(const Jet3& u) const { return jet_(u); }
  Jet3 jet(double x) const { return jet_(Jet3::variable(x)); }
  double value(double x) const { return value_(x); }
  double derivative(double x) const { return jet(x).c1; }

  const std::string& name() const noexcept { return traits_.name; }
  Family family() const noexcept { return traits_.family; }
  const FamilyParams& params() const noexcept { return traits_.params; }
  const Interval& domain() const noexcept { return traits_.domain; }
  Monotonicity monotonicity() const noexcept { return traits_.monotonicity; }
  bool increasing() const noexcept { return traits_.monotonicity == Monotonicity::increasing; }
  bool bounded() const noexcept { return traits_.bounded; }
  double limit_lo() const noexcept { return traits_.limit_lo; }
  double limit_hi() const noexcept { return traits_.limit_hi; }
  const Traits& traits() const noexcept { return traits_; }

  /// Closure of the range of f over its whole domain.
  Interval range() const noexcept;
  /// Image of the (monotone) function over `input` intersected with the domain.
  Interval image(const Interval& input) const;
  /// sup of f over [0, upper] intersected with the domain (upper may be +inf).
  double sup_on(double upper) const;

 private:
  Traits traits_;
  JetKernel jet_;
  ValueKernel value_;
};

/// Shifted Hill function z -> (1 + lambda (z/z0)^a) / (1 + (z/z0)^a) on [0, inf).
InteractionFunction make_hill(double lambda, double a, double z0);
/// General logistic x -> (1 / (1 + e^{-x}))^alpha on the real line.
InteractionFunction make_logistic(double alpha);
InteractionFunction make_tanh();
InteractionFunction make_atan();
InteractionFunction make_gudermannian();
InteractionFunction make_erf();
/// x -> x^nu on (0, inf).
InteractionFunction make_power(double nu);
/// User expression. Without an explicit domain the function lives on [0, inf) when it can be
/// evaluated at 0, on (0, inf) otherwise. Monotonicity and boundedness are read off the samples.
InteractionFunction make_custom(const Expr& expr, std::optional<Interval> domain = std::nullopt,
                                std::string name = {});
/// outer o inner. Throws ConfigError when the range of inner leaves the domain of outer.
InteractionFunction compose(const InteractionFunction& outer, const InteractionFunction& inner);
/// c * f for c > 0.
InteractionFunction scaled(const InteractionFunction& f, double factor);
/// Same function restricted to a sub-interval of its domain.
InteractionFunction restricted(const InteractionFunction& f, const Interval& window);
/// Pointwise inverse built by bisection on `window` (a bounded sub-interval of f's domain).
InteractionFunction make_inverse(const InteractionFunction& f, const Interval& window);

/// The general logistic (alpha in {0.5, 1, 2}), tanh, atan, Gudermannian and erf sigmoids.
std::vector<InteractionFunction> catalog_sigmoids();

/// Parses `hill(lambda,a,z0)`, `logistic(alpha)`, `tanh`, `atan`, `gd`, `erf`, `power(nu)` or
/// `expr:<expression>`, optionally preceded by a positive gain `c*`.
InteractionFunction parse_function_spec(std::string_view text);

// ---------------------------------------------------------------------------------------------

enum class Orientation { cooperative, competitive };

/// x' = alpha f(y) - x,  y' = beta g(x) - y.
struct SystemSpec {
  InteractionFunction f;
  InteractionFunction g;
  double alpha = 1.0;
  double beta = 1.0;

  Orientation orientation() const noexcept {
    return f.increasing() ? Orientation::cooperative : Orientation::competitive;
  }
};

/// Throws ConfigError unless f and g share their monotonicity, one of them is bounded, both map
/// R+ into R+, and alpha, beta > 0.
void validate(const SystemSpec& spec);

/// Rescales a Hill/Hill system to unit thresholds: (x, y) -> (x / z02, y / z01).
SystemSpec rescale_to_unit(const SystemSpec& spec);

/// Deterministic sample points of `domain` used by every function-level certificate.
std::vector<double> sampling_grid(const Interval& domain);

}  // namespace bistab
