#include "bistab/hill_regions.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "bistab/errors.hpp"

namespace bistab {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// The region in the orientation where lambda2 > 0 whenever exactly one lambda vanishes.
struct Canonical {
  double l1, l2, a, b, rho;
  HillBranch branch;

  double big_c() const {
    const double s1 = 1.0 + std::sqrt(l1);
    const double s2 = 1.0 + std::sqrt(l2);
    return s1 * s1 * s2 * s2 * rho;
  }

  static double pm_bound(double lambda, double rho, double exponent, double sign) {
    const double sq = std::sqrt(lambda);
    const double phi = hill_phi(lambda);
    const double inner = std::sqrt(rho - 1.0) + sign * std::sqrt(rho - phi * phi);
    const double w = 1.0 / sq + (1.0 + sq) * (1.0 + sq) * std::sqrt(rho - 1.0) * inner / (2.0 * lambda);
    return std::pow(w, 1.0 / exponent);
  }

  double x_bound(double sign) const {
    if (branch == HillBranch::both_zero)
      return sign < 0 ? std::pow(1.0 / (rho - 1.0), 1.0 / b) : kInfinity;
    return pm_bound(l2, rho, b, sign);
  }
  double y_bound(double sign) const {
    if (branch == HillBranch::both_positive) return pm_bound(l1, rho, a, sign);
    return sign < 0 ? std::pow(1.0 / (rho - 1.0), 1.0 / a) : kInfinity;
  }

  double alpha_coef(double x) const {
    const double w = std::pow(x, b);
    return (1.0 + l1) - big_c() * w / ((1.0 + w) * (1.0 + l2 * w));
  }
  double beta_coef(double y) const {
    const double d = std::pow(y, a);
    return (1.0 + l2) - big_c() * d / ((1.0 + d) * (1.0 + l1 * d));
  }

  double r(double x, double sign) const {
    const double w = std::pow(x, b);
    switch (branch) {
      case HillBranch::both_positive: {
        const double al = alpha_coef(x);
        return std::pow((-al + sign * std::sqrt(al * al - 4.0 * l1)) / (2.0 * l1), 1.0 / a);
      }
      case HillBranch::lambda1_zero: {
        if (sign > 0) return kInfinity;
        const double num = (1.0 + w) * (1.0 + l2 * w);
        const double den = -l2 * w * w + (a * b * (1.0 - l2) - (1.0 + l2)) * w - 1.0;
        return std::pow(num / den, 1.0 / a);
      }
      case HillBranch::both_zero:
        if (sign > 0) return kInfinity;
        return std::pow((1.0 + w) / ((rho - 1.0) * w - 1.0), 1.0 / a);
      case HillBranch::empty: break;
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  double s(double y, double sign) const {
    const double d = std::pow(y, a);
    switch (branch) {
      case HillBranch::both_positive:
      case HillBranch::lambda1_zero: {
        const double be = beta_coef(y);
        return std::pow((-be + sign * std::sqrt(be * be - 4.0 * l2)) / (2.0 * l2), 1.0 / b);
      }
      case HillBranch::both_zero:
        if (sign > 0) return kInfinity;
        return std::pow((1.0 + d) / ((rho - 1.0) * d - 1.0), 1.0 / b);
      case HillBranch::empty: break;
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  bool contains(double x, double y) const {
    if (branch == HillBranch::empty) return false;
    if (!(x > x_bound(-1) && x < x_bound(1))) return false;
    const double lo = r(x, -1);
    const double hi = r(x, 1);
    // NaN sections (no real roots) compare false.
    return lo > 0.0 && y > lo && y < hi;
  }
};

Canonical canonical(const HillRegionParams& p) {
  if (p.swapped) return {p.lambda2, p.lambda1, p.b, p.a, p.rho, p.branch};
  return {p.lambda1, p.lambda2, p.a, p.b, p.rho, p.branch};
}

}  // namespace

std::string_view to_string(HillBranch b) noexcept {
  switch (b) {
    case HillBranch::empty: return "empty";
    case HillBranch::both_positive: return "both_positive";
    case HillBranch::lambda1_zero: return "lambda1_zero";
    case HillBranch::both_zero: return "both_zero";
  }
  return "empty";
}

double hill_phi(double lambda) noexcept { return (1.0 - std::sqrt(lambda)) / (1.0 + std::sqrt(lambda)); }

HillRegionParams hill_region_closed_form(double lambda1, double lambda2, double a, double b) {
  for (double l : {lambda1, lambda2})
    if (!(l >= 0.0 && l < 1.0))
      throw ConfigError(fmt::format("closed-form region needs lambda in [0, 1), got {}", l));
  for (double e : {a, b})
    if (!(e >= 1.0) || !std::isfinite(e))
      throw ConfigError(fmt::format("closed-form region needs Hill exponents >= 1, got {}", e));

  HillRegionParams p;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.a = a;
  p.b = b;
  p.rho = a * b * hill_phi(lambda1) * hill_phi(lambda2);
  if (p.rho <= 1.0) return p;

  p.swapped = lambda1 > 0.0 && lambda2 == 0.0;
  const double cl1 = p.swapped ? lambda2 : lambda1;
  const double cl2 = p.swapped ? lambda1 : lambda2;
  p.branch = cl1 > 0.0 ? HillBranch::both_positive
             : cl2 > 0.0 ? HillBranch::lambda1_zero
                         : HillBranch::both_zero;
  const Canonical c = canonical(p);
  if (p.swapped) {
    p.x_minus = c.y_bound(-1);
    p.x_plus = c.y_bound(1);
    p.y_minus = c.x_bound(-1);
    p.y_plus = c.x_bound(1);
  } else {
    p.x_minus = c.x_bound(-1);
    p.x_plus = c.x_bound(1);
    p.y_minus = c.y_bound(-1);
    p.y_plus = c.y_bound(1);
  }
  return p;
}

double HillRegionParams::alpha_coef(double x) const {
  const Canonical c = canonical(*this);
  return swapped ? c.beta_coef(x) : c.alpha_coef(x);
}
double HillRegionParams::beta_coef(double y) const {
  const Canonical c = canonical(*this);
  return swapped ? c.alpha_coef(y) : c.beta_coef(y);
}
double HillRegionParams::r_minus(double x) const {
  const Canonical c = canonical(*this);
  return swapped ? c.s(x, -1) : c.r(x, -1);
}
double HillRegionParams::r_plus(double x) const {
  const Canonical c = canonical(*this);
  return swapped ? c.s(x, 1) : c.r(x, 1);
}
double HillRegionParams::s_minus(double y) const {
  const Canonical c = canonical(*this);
  return swapped ? c.r(y, -1) : c.s(y, -1);
}
double HillRegionParams::s_plus(double y) const {
  const Canonical c = canonical(*this);
  return swapped ? c.r(y, 1) : c.s(y, 1);
}

bool HillRegionParams::contains(double x, double y) const {
  const Canonical c = canonical(*this);
  return swapped ? c.contains(y, x) : c.contains(x, y);
}

// ---------------------------------------------------------------------------------------------

std::string_view to_string(SymmetricKind k) noexcept {
  switch (k) {
    case SymmetricKind::empty: return "empty";
    case SymmetricKind::alpha_half_line: return "alpha_half_line";
    case SymmetricKind::alpha_interval: return "alpha_interval";
    case SymmetricKind::beta_interval: return "beta_interval";
  }
  return "empty";
}

SymmetricInterval symmetric_region(double lambda, double a, double z0) {
  if (!(a > 1.0) || !std::isfinite(a))
    throw ConfigError(fmt::format("symmetric region needs a > 1, got {}", a));
  if (!(lambda >= 0.0) || !std::isfinite(lambda) || lambda == 1.0)
    throw ConfigError(fmt::format("symmetric region needs lambda >= 0 and != 1, got {}", lambda));
  if (!(z0 > 0.0) || !std::isfinite(z0))
    throw ConfigError(fmt::format("symmetric region needs z0 > 0, got {}", z0));

  SymmetricInterval out;
  out.lambda0_minus = std::pow((a - 1.0) / (a + 1.0), 2);
  out.lambda0_plus = std::pow((a + 1.0) / (a - 1.0), 2);
  const auto G = [&](double w) { return z0 * std::pow(w, 1.0 / a) * (1.0 + w) / (1.0 + lambda * w); };

  if (lambda == 0.0) {
    out.kind = SymmetricKind::alpha_half_line;
    out.lo = z0 * std::pow(1.0 / (a - 1.0), 1.0 / a) * a / (a - 1.0);
    out.hi = kInfinity;
  } else if (lambda <= out.lambda0_minus) {
    const double root = std::sqrt((1.0 - lambda) * (out.lambda0_minus - lambda));
    const double w_minus = (a - 1.0 - (a + 1.0) * (lambda + root)) / (2.0 * lambda);
    const double w_plus = (a - 1.0 - (a + 1.0) * (lambda - root)) / (2.0 * lambda);
    out.kind = SymmetricKind::alpha_interval;
    out.lo = G(w_minus);
    out.hi = G(w_plus);
  } else if (lambda >= out.lambda0_plus) {
    const double root = std::sqrt((lambda - 1.0) * (lambda - out.lambda0_plus));
    const double t_minus = (-(a + 1.0) + (a - 1.0) * (lambda - root)) / (2.0 * lambda);
    const double t_plus = (-(a + 1.0) + (a - 1.0) * (lambda + root)) / (2.0 * lambda);
    out.kind = SymmetricKind::beta_interval;
    out.lo = G(t_plus);
    out.hi = G(t_minus);
  }
  return out;
}

}  // namespace bistab
