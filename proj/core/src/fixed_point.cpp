#include "bistab/fixed_point.hpp"

#include <algorithm>
#include <cmath>

#include "bistab/errors.hpp"

namespace bistab {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

double bisect(const std::function<double(double)>& h, double lo, double hi, double hlo) {
  const int slo = sign_of(hlo);
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double hm = h(mid);
    if (hm == 0.0) return mid;
    if (sign_of(hm) == slo) lo = mid;
    else hi = mid;
  }
  return std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
}

/// Minimizes s * h on [a, b] by golden-section search, where s is the sign of h on the dip.
double golden_extremum(const std::function<double(double)>& h, double a, double b, int s) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double hc = s * h(c);
  double hd = s * h(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (hc < hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - invphi * (b - a);
      hc = s * h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + invphi * (b - a);
      hd = s * h(d);
    }
  }
  return hc < hd ? c : d;
}

}  // namespace

std::vector<FixedPoint> find_fixed_points(const std::function<double(double)>& map,
                                          const Interval& interval,
                                          const FixedPointOptions& options) {
  if (!interval.bounded() || !(interval.hi > interval.lo))
    throw ConfigError("fixed-point search needs a bounded, non-empty interval");
  const auto h = [&map](double x) { return map(x) - x; };

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(options.linear_points + options.log_points) + 2);
  const double lo = interval.lo;
  const double hi = interval.hi;
  for (int i = 0; i <= options.linear_points; ++i)
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) / options.linear_points);
  if (hi > 0.0) {
    const double floor = std::max(hi * options.log_floor, lo > 0.0 ? lo : 0.0);
    const double span = std::log(hi / floor);
    for (int i = 0; i < options.log_points; ++i) {
      const double x = floor * std::exp(span * static_cast<double>(i) / (options.log_points - 1));
      if (x > lo && x < hi) xs.push_back(x);
    }
  }
  std::erase_if(xs, [&](double x) { return !interval.contains(x); });
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 3) throw ConfigError("fixed-point search interval is too small");

  std::vector<double> hs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) hs[i] = h(xs[i]);

  std::vector<FixedPoint> roots;
  auto add_bracket = [&](double a, double b, double ha) {
    roots.push_back({bisect(h, a, b, ha), a, b, false});
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (hs[i] == 0.0) roots.push_back({xs[i], xs[i], xs[i], false});
    if (i + 1 < xs.size() && sign_of(hs[i]) * sign_of(hs[i + 1]) < 0) add_bracket(xs[i], xs[i + 1], hs[i]);
  }

  // Near-tangencies: a dip of |h| toward zero between two samples of the same sign.
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const int s = sign_of(hs[i]);
    if (s == 0 || sign_of(hs[i - 1]) != s || sign_of(hs[i + 1]) != s) continue;
    if (!(std::abs(hs[i]) <= std::abs(hs[i - 1]) && std::abs(hs[i]) <= std::abs(hs[i + 1]))) continue;
    if (std::abs(hs[i]) == std::abs(hs[i - 1]) && std::abs(hs[i]) == std::abs(hs[i + 1])) continue;

    const double a = xs[i - 1];
    const double b = xs[i + 1];
    // Finer look first; an opposite sign there means two ordinary roots.
    const int m = 2 * options.tangency_refinement;
    bool split = false;
    for (int k = 1; k < m && !split; ++k) {
      const double x = a + (b - a) * k / m;
      const double hx = h(x);
      if (hx == 0.0) {
        roots.push_back({x, x, x, false});
        split = true;
      } else if (sign_of(hx) != s) {
        add_bracket(a, x, hs[i - 1]);
        add_bracket(x, b, hx);
        split = true;
      }
    }
    if (split) continue;
    const double xm = golden_extremum(h, a, b, s);
    const double hm = h(xm);
    if (hm == 0.0) {
      roots.push_back({xm, xm, xm, true});
    } else if (sign_of(hm) != s) {
      add_bracket(a, xm, hs[i - 1]);
      add_bracket(xm, b, hm);
    } else if (std::abs(hm) <= 1e-12 * (1.0 + std::abs(xm))) {
      roots.push_back({xm, a, b, true});
    }
  }

  std::sort(roots.begin(), roots.end(), [](const FixedPoint& p, const FixedPoint& q) { return p.x < q.x; });
  std::vector<FixedPoint> unique;
  for (const auto& r : roots) {
    if (!unique.empty() && std::abs(r.x - unique.back().x) <= 1e-14 * (1.0 + std::abs(r.x))) continue;
    unique.push_back(r);
  }
  return unique;
}

}  // namespace bistab
