#include "bistab/convexity.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bistab/errors.hpp"

namespace bistab {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::strictly_gamma_convex: return "strictly_gamma_convex";
    case Verdict::gamma_convex: return "gamma_convex";
    case Verdict::strictly_gamma_concave: return "strictly_gamma_concave";
    case Verdict::gamma_concave: return "gamma_concave";
    case Verdict::both: return "both";
    case Verdict::neither: return "neither";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool is_convex_class(Verdict v) noexcept {
  return v == Verdict::strictly_gamma_convex || v == Verdict::gamma_convex || v == Verdict::both;
}

bool is_concave_class(Verdict v) noexcept {
  return v == Verdict::strictly_gamma_concave || v == Verdict::gamma_concave || v == Verdict::both;
}

Verdict dual(Verdict v) noexcept {
  switch (v) {
    case Verdict::strictly_gamma_convex: return Verdict::strictly_gamma_concave;
    case Verdict::gamma_convex: return Verdict::gamma_concave;
    case Verdict::strictly_gamma_concave: return Verdict::strictly_gamma_convex;
    case Verdict::gamma_concave: return Verdict::gamma_convex;
    default: return v;
  }
}

namespace {

constexpr double kBothTol = 1e-10;
constexpr double kSignTol = 1e-12;
constexpr double kStrictTol = 1e-10;
constexpr double kStrictShare = 0.99;
constexpr double kMixedTol = 1e-6;
constexpr double kTiny = 1e-250;

}  // namespace

ConvexityCertificate certify_gamma(const InteractionFunction& f, double alpha_exponent) {
  if (!(alpha_exponent > 0.0)) throw ConfigError("convexity exponent must be > 0");
  ConvexityCertificate cert;
  cert.alpha_exponent = alpha_exponent;
  const double k = alpha_exponent + 1.0;

  struct Sample {
    double x;
    double r;  // s normalized by |f' f'''| + k f''^2, in [-1, 1]
  };
  std::vector<Sample> samples;
  double margin = kInf;
  for (double x : sampling_grid(f.domain())) {
    Jet3 j;
    try {
      j = f.jet(x);
    } catch (const Error&) {
      ++cert.excluded;
      continue;
    }
    const double d1 = j.d1();
    const double d2 = j.d2();
    const double d3 = j.d3();
    if (!j.is_finite() || !(std::abs(d1) >= kTiny)) {
      ++cert.excluded;
      continue;
    }
    // Normalizing by f'^2 first keeps the sign test free of underflow in the tails.
    const double u = d2 / d1;
    const double v = d3 / d1;
    const double rn = v - k * u * u;
    const double rd = std::abs(v) + k * u * u;
    samples.push_back({x, rd > 0.0 ? rn / rd : 0.0});
    const double a = d1 * d3;
    const double s = a - k * d2 * d2;
    margin = std::min(margin, std::abs(s) / (1.0 + std::abs(a)));
  }
  cert.evaluated = samples.size();
  if (samples.empty()) return cert;
  cert.margin = margin;

  double max_abs = 0.0;
  const Sample* hi = &samples.front();
  const Sample* lo = &samples.front();
  const Sample* flat = &samples.front();
  std::size_t strict_neg = 0;
  std::size_t strict_pos = 0;
  for (const auto& s : samples) {
    max_abs = std::max(max_abs, std::abs(s.r));
    if (s.r > kSignTol) ++cert.positive;
    if (s.r < -kSignTol) ++cert.negative;
    if (s.r < -kStrictTol) ++strict_neg;
    if (s.r > kStrictTol) ++strict_pos;
    if (s.r > hi->r) hi = &s;
    if (s.r < lo->r) lo = &s;
    if (std::abs(s.r) < std::abs(flat->r)) flat = &s;
  }
  const auto n = static_cast<double>(samples.size());

  if (max_abs <= kBothTol) {
    cert.verdict = Verdict::both;
  } else if (cert.positive == 0) {
    const bool strict = static_cast<double>(strict_neg) >= kStrictShare * n;
    cert.verdict = strict ? Verdict::strictly_gamma_convex : Verdict::gamma_convex;
    if (!strict) cert.witness = flat->x;
  } else if (cert.negative == 0) {
    const bool strict = static_cast<double>(strict_pos) >= kStrictShare * n;
    cert.verdict = strict ? Verdict::strictly_gamma_concave : Verdict::gamma_concave;
    if (!strict) cert.witness = flat->x;
  } else {
    cert.verdict = (hi->r > kMixedTol && lo->r < -kMixedTol) ? Verdict::neither : Verdict::inconclusive;
    cert.witness = cert.positive <= cert.negative ? hi->x : lo->x;
  }
  return cert;
}

bool certified_pair(const ConvexityCertificate& f, const ConvexityCertificate& g) noexcept {
  return is_convex_class(f.verdict) && is_convex_class(g.verdict) &&
         (f.verdict == Verdict::strictly_gamma_convex || g.verdict == Verdict::strictly_gamma_convex);
}

namespace {

/// (f(x) - f(y)) / (x - y). When the two values agree to six digits their difference is
/// integrated from f' (8-point Gauss-Legendre on 8 panels) instead of subtracted.
double secant_slope(const InteractionFunction& f, double x, double fx, double y, double fy) {
  const double diff = fx - fy;
  if (std::abs(diff) > 1e-6 * std::max(std::abs(fx), std::abs(fy))) return diff / (x - y);
  static constexpr double node[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                     0.9602898564975363};
  static constexpr double weight[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                       0.1012285362903763};
  constexpr int panels = 8;
  const double lo = std::min(x, y), width = std::abs(x - y) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width, half = 0.5 * width;
    for (int k = 0; k < 4; ++k)
      sum += weight[k] * (f.derivative(mid - half * node[k]) + f.derivative(mid + half * node[k]));
  }
  return 0.5 * sum / panels;
}

}  // namespace

NonlocalReport check_nonlocal(const InteractionFunction& f,
                              const std::vector<std::pair<double, double>>& pairs) {
  NonlocalReport rep;
  rep.max_d = rep.max_relative = -kInf;
  rep.min_d = rep.min_relative = kInf;
  for (const auto& [x, y] : pairs) {
    if (x == y) continue;
    const Jet3 jx = f.jet(x);
    const Jet3 jy = f.jet(y);
    const double secant = secant_slope(f, x, jx.c0, y, jy.c0);
    const double prod = jx.c1 * jy.c1;
    const double sq = secant * secant;
    const double d = prod - sq;
    const double scale = std::abs(prod) + sq;
    const double rel = scale > 0.0 ? d / scale : 0.0;
    ++rep.pairs;
    if (d < 0.0) ++rep.negative;
    if (d > 0.0) ++rep.positive;
    rep.max_d = std::max(rep.max_d, d);
    rep.min_d = std::min(rep.min_d, d);
    rep.max_relative = std::max(rep.max_relative, rel);
    rep.min_relative = std::min(rep.min_relative, rel);
  }
  if (rep.pairs == 0) rep.max_d = rep.min_d = rep.max_relative = rep.min_relative = 0.0;
  return rep;
}

bool nonlocal_consistent(const NonlocalReport& r, Verdict v, double tolerance) noexcept {
  switch (v) {
    case Verdict::strictly_gamma_convex: return r.positive == 0 && r.max_relative < 0.0;
    case Verdict::gamma_convex: return r.max_relative <= tolerance;
    case Verdict::strictly_gamma_concave: return r.negative == 0 && r.min_relative > 0.0;
    case Verdict::gamma_concave: return r.min_relative >= -tolerance;
    case Verdict::both: return std::abs(r.max_relative) <= tolerance && std::abs(r.min_relative) <= tolerance;
    default: return true;
  }
}

ConvexityCertificate certify_composition(const InteractionFunction& outer,
                                         const InteractionFunction& inner) {
  return certify_gamma(compose(outer, inner));
}

DualityReport check_inverse_duality(const InteractionFunction& f, std::optional<Interval> window) {
  if (!window) {
    if (!f.domain().bounded())
      throw ConfigError(fmt::format("{}: an explicit window is needed on an unbounded domain", f.name()));
    window = f.domain();
  }
  // Open ends are pulled in slightly so the inverse can be anchored on finite values.
  const double inset = 1e-9 * (window->hi - window->lo);
  const Interval closed{window->lo_closed ? window->lo : window->lo + inset,
                        window->hi_closed ? window->hi : window->hi - inset, true, true};
  const auto part = restricted(f, closed);
  for (double x : sampling_grid(closed)) {
    const double d1 = f.derivative(x);
    if (!(std::abs(d1) >= 1e-14))
      throw InversionError(fmt::format("{} is numerically flat at x = {} (f' = {})", f.name(), x, d1));
  }
  DualityReport rep;
  rep.function = certify_gamma(part);
  rep.inverse = certify_gamma(make_inverse(f, closed));
  rep.dual = rep.inverse.verdict == dual(rep.function.verdict);
  return rep;
}

}  // namespace bistab
