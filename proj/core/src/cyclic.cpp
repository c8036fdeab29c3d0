#include "bistab/cyclic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bistab/errors.hpp"

namespace bistab {

std::size_t CyclicSpec::decreasing_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(functions.begin(), functions.end(), [](const InteractionFunction& f) { return !f.increasing(); }));
}

std::string_view to_string(CyclicStability s) noexcept {
  switch (s) {
    case CyclicStability::stable: return "stable";
    case CyclicStability::unstable: return "unstable";
    case CyclicStability::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string_view to_string(CyclicVerdict v) noexcept {
  switch (v) {
    case CyclicVerdict::at_most_bistable: return "at_most_bistable";
    case CyclicVerdict::unique_equilibrium: return "unique_equilibrium";
    case CyclicVerdict::no_guarantee: return "no_guarantee";
  }
  return "no_guarantee";
}

CyclicResult cyclic_equilibria(const CyclicSpec& spec, const FixedPointOptions& options, double tangency_tol) {
  const auto& fs = spec.functions;
  const std::size_t n = fs.size();
  if (n < 2) throw ConfigError("a cyclic system needs at least two functions");
  for (const auto& f : fs) {
    if (!f.domain().covers(Interval::positive()))
      throw ConfigError(fmt::format("{} is not defined on (0, inf)", f.name()));
  }

  // Range of x_n after one pass around the ring, starting from the whole half-line.
  Interval range = Interval::nonnegative();
  for (const auto& f : fs) {
    range = f.image(range);
    if (range.lo < 0.0)
      throw ConfigError(fmt::format("{} takes negative values on the non-negative half-line", f.name()));
  }
  if (!std::isfinite(range.hi))
    throw ConfigError("the composite map is unbounded: at least one member must be bounded");

  const double margin = 1e-9 * (1.0 + range.hi);
  const double lo = std::max(0.0, range.lo - margin);
  const Interval window{lo, range.hi + margin, fs.front().domain().contains(lo), true};
  const auto composite = [&fs](double x) {
    for (const auto& f : fs) x = f.value(x);
    return x;
  };

  CyclicResult out;
  out.decreasing_count = spec.decreasing_count();
  for (const auto& p : find_fixed_points(composite, window, options)) {
    CyclicEquilibrium e;
    e.x.resize(n);
    double prev = p.x;
    e.derivative_product = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Jet3 j = fs[i].jet(prev);
      e.x[i] = j.c0;
      e.derivative_product *= j.c1;
      prev = j.c0;
    }
    e.x[n - 1] = p.x;
    const double P = e.derivative_product;
    const double root = std::pow(std::abs(P), 1.0 / static_cast<double>(n));
    if (P >= 0.0) {
      e.dominant_real = root - 1.0;
      e.stability = p.tangent || std::abs(P - 1.0) <= tangency_tol ? CyclicStability::indeterminate
                    : P < 1.0                                      ? CyclicStability::stable
                                                                   : CyclicStability::unstable;
    } else {
      e.dominant_real = -1.0 + root * std::cos(std::numbers::pi / static_cast<double>(n));
      e.stability = std::abs(e.dominant_real) <= tangency_tol ? CyclicStability::indeterminate
                    : e.dominant_real < 0.0                   ? CyclicStability::stable
                                                              : CyclicStability::unstable;
    }
    out.equilibria.push_back(std::move(e));
  }
  if (out.decreasing_count % 2 == 1 && out.equilibria.size() != 1)
    throw ConsistencyError(fmt::format("{} equilibria found although {} members are decreasing",
                                       out.equilibria.size(), out.decreasing_count));
  return out;
}

CyclicCertificate cyclic_certificate(const CyclicSpec& spec) {
  CyclicCertificate cert;
  cert.decreasing_count = spec.decreasing_count();
  bool all_convex = true, any_strict_convex = false, all_concave = true, any_strict_concave = false;
  for (const auto& f : spec.functions) {
    const Verdict v = certify_gamma(f).verdict;
    cert.members.push_back(v);
    all_convex = all_convex && is_convex_class(v);
    all_concave = all_concave && is_concave_class(v);
    any_strict_convex = any_strict_convex || v == Verdict::strictly_gamma_convex;
    any_strict_concave = any_strict_concave || v == Verdict::strictly_gamma_concave;
  }
  if (cert.decreasing_count % 2 == 1 || (all_concave && any_strict_concave))
    cert.verdict = CyclicVerdict::unique_equilibrium;
  else if (all_convex && any_strict_convex)
    cert.verdict = CyclicVerdict::at_most_bistable;

  if (cert.verdict != CyclicVerdict::no_guarantee) {
    cert.count = cyclic_equilibria(spec).equilibria.size();
    const std::size_t limit = cert.verdict == CyclicVerdict::at_most_bistable ? 3 : 1;
    if (cert.count > limit)
      throw CertificationViolation(fmt::format("{} equilibria found under the {} guarantee", cert.count,
                                               to_string(cert.verdict)));
  }
  return cert;
}

}  // namespace bistab
