#include "bistab/dynamics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bistab/errors.hpp"

namespace bistab {

namespace {

struct State {
  double x;
  double y;
};

State field(const SystemSpec& s, State p) {
  return {s.alpha * s.f.value(p.y) - p.x, s.beta * s.g.value(p.x) - p.y};
}

State rk4(const SystemSpec& s, State p, double h) {
  const State k1 = field(s, p);
  const State k2 = field(s, {p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y});
  const State k3 = field(s, {p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y});
  const State k4 = field(s, {p.x + h * k3.x, p.y + h * k3.y});
  return {p.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          p.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

Trajectory run(const SystemSpec& spec, State p, const EquilibriumSet& eq, const IntegrateOptions& o, double dt) {
  double eq_scale = 0.0;
  for (const auto& e : eq.equilibria) eq_scale = std::max({eq_scale, std::abs(e.x_bar), std::abs(e.y_bar)});
  const double tol = o.settle_tol * (1.0 + eq_scale);

  Trajectory tr;
  tr.step = dt;
  std::vector<TrajectorySample> all;
  all.push_back({0.0, p.x, p.y});
  std::optional<std::size_t> near;
  int settled = 0;
  const auto steps = static_cast<long>(std::ceil(o.t_max / dt - 1e-9));
  for (long n = 1; n <= steps; ++n) {
    p = rk4(spec, p, dt);
    if (!(p.x >= 0.0) || !(p.y >= 0.0))
      throw StepSizeError(fmt::format("negative state ({}, {}) at t = {} with dt = {}", p.x, p.y, n * dt, dt));
    all.push_back({static_cast<double>(n) * dt, p.x, p.y});

    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < eq.equilibria.size(); ++k) {
      const auto& e = eq.equilibria[k];
      if (std::max(std::abs(p.x - e.x_bar), std::abs(p.y - e.y_bar)) <= tol) {
        hit = k;
        break;
      }
    }
    settled = (hit && hit == near) ? settled + 1 : (hit ? 1 : 0);
    near = hit;
    if (settled >= o.settle_steps) {
      tr.terminal = hit;
      break;
    }
  }

  const std::size_t stride = (all.size() + o.max_samples - 1) / o.max_samples;
  for (std::size_t i = 0; i < all.size(); i += std::max<std::size_t>(stride, 1)) tr.samples.push_back(all[i]);
  if (tr.samples.back().t != all.back().t) {
    if (tr.samples.size() >= o.max_samples) tr.samples.back() = all.back();
    else tr.samples.push_back(all.back());
  }
  return tr;
}

}  // namespace

Trajectory integrate(const SystemSpec& spec, double x0, double y0, const EquilibriumSet& equilibria,
                     const IntegrateOptions& options) {
  if (!(x0 >= 0.0) || !(y0 >= 0.0)) throw ConfigError("initial state must be non-negative");
  if (!(options.dt > 0.0) || !(options.t_max >= 0.0)) throw ConfigError("dt must be > 0 and t_max >= 0");
  double dt = options.dt;
  for (int attempt = 0;; ++attempt) {
    try {
      return run(spec, {x0, y0}, equilibria, options, dt);
    } catch (const StepSizeError&) {
      if (attempt >= options.max_halvings) throw;
      dt *= 0.5;
    }
  }
}

Trajectory integrate(const SystemSpec& spec, double x0, double y0, double t_max, double dt) {
  EquilibriaOptions eo;
  eo.certified = false;
  IntegrateOptions io;
  io.t_max = t_max;
  io.dt = dt;
  return integrate(spec, x0, y0, find_equilibria(spec, eo), io);
}

// ---------------------------------------------------------------------------------------------

int Separatrix::side_of(double x, double y) const {
  const auto& pts = curve.points;
  if (pts.empty()) return 0;
  if (x < pts.front().x) return increasing ? 1 : -1;
  if (x > pts.back().x) return increasing ? -1 : 1;
  const auto it = std::lower_bound(pts.begin(), pts.end(), x, [](const Point2& p, double v) { return p.x < v; });
  double gamma;
  if (it == pts.begin()) {
    gamma = it->y;
  } else {
    const Point2& b = *it;
    const Point2& a = *(it - 1);
    gamma = b.x > a.x ? a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x) : b.y;
  }
  return y > gamma ? 1 : (y < gamma ? -1 : 0);
}

namespace {

struct Box {
  double xmax;
  double ymax;
  bool inside(State p) const { return p.x >= 0.0 && p.y >= 0.0 && p.x <= xmax && p.y <= ymax; }
};

/// Point where the segment from `in` (inside) to `out` crosses the box boundary.
State exit_point(const Box& box, State in, State out) {
  double t = 1.0;
  auto clip = [&](double from, double to, double bound) {
    if ((to - bound) * (from - bound) < 0.0) t = std::min(t, (bound - from) / (to - from));
  };
  clip(in.x, out.x, 0.0);
  clip(in.x, out.x, box.xmax);
  clip(in.y, out.y, 0.0);
  clip(in.y, out.y, box.ymax);
  return {in.x + t * (out.x - in.x), in.y + t * (out.y - in.y)};
}

/// Reverse-time branch of the stable manifold from `start` until it leaves the box.
std::vector<State> reverse_branch(const SystemSpec& spec, State start, const Box& box, double dt, double t_max) {
  std::vector<State> pts{start};
  State p = start;
  const auto steps = static_cast<long>(t_max / dt);
  for (long n = 0; n < steps; ++n) {
    State next;
    bool ok = true;
    // Stages may step outside the quadrant where f and g are defined.
    try {
      const State k1 = field(spec, p);
      const State s2{p.x - 0.5 * dt * k1.x, p.y - 0.5 * dt * k1.y};
      if (!(s2.x >= 0.0 && s2.y >= 0.0)) throw DomainError("stage", s2.x, "outside the quadrant");
      const State k2 = field(spec, s2);
      const State s3{p.x - 0.5 * dt * k2.x, p.y - 0.5 * dt * k2.y};
      if (!(s3.x >= 0.0 && s3.y >= 0.0)) throw DomainError("stage", s3.x, "outside the quadrant");
      const State k3 = field(spec, s3);
      const State s4{p.x - dt * k3.x, p.y - dt * k3.y};
      if (!(s4.x >= 0.0 && s4.y >= 0.0)) throw DomainError("stage", s4.x, "outside the quadrant");
      const State k4 = field(spec, s4);
      next = {p.x - dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
              p.y - dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
    } catch (const Error&) {
      ok = false;
      const State k1 = field(spec, p);
      next = {p.x - dt * k1.x, p.y - dt * k1.y};
    }
    if (!box.inside(next) || !ok) {
      pts.push_back(exit_point(box, p, next));
      break;
    }
    pts.push_back(next);
    p = next;
  }
  return pts;
}

}  // namespace

Separatrix compute_separatrix(const SystemSpec& spec) {
  EquilibriaOptions eo;
  eo.certified = false;
  Separatrix sep;
  sep.equilibria = find_equilibria(spec, eo);
  const auto& eq = sep.equilibria.equilibria;
  std::optional<std::size_t> saddle;
  for (std::size_t k = 0; k < eq.size(); ++k) {
    if (eq[k].stability == Stability::indeterminate)
      throw ConsistencyError(fmt::format("equilibrium at x = {} is tangent; eigenvectors are degenerate", eq[k].x_bar));
    if (eq[k].stability == Stability::saddle && !saddle) saddle = k;
  }
  if (!saddle || eq.size() != 3)
    throw NotBistableError(fmt::format("system has {} equilibria; a separatrix needs exactly one saddle between two "
                                       "stable equilibria", eq.size()));
  sep.saddle = eq[*saddle];
  sep.increasing = spec.orientation() == Orientation::competitive;

  const double xmax = spec.alpha * spec.f.sup_on(kInf);
  const double ymax = spec.beta * spec.g.sup_on(kInf);
  if (!std::isfinite(xmax) || !std::isfinite(ymax))
    throw ConfigError("separatrix needs bounded f and g to close the phase-plane box");
  const Box box{xmax, ymax};
  sep.scale = std::max(xmax, ymax);

  const State s{sep.saddle.x_bar, sep.saddle.y_bar};
  const double a = spec.alpha * spec.f.derivative(s.y);
  const double root = std::sqrt(sep.saddle.jac_product);
  auto unit = [](double u, double v) {
    const double n = std::hypot(u, v);
    return State{u / n, v / n};
  };
  const State vs = unit(a, -root);
  const State vu = unit(a, root);
  const double eps = 1e-6 * sep.scale;
  const double dt = 1e-2;

  auto b1 = reverse_branch(spec, {s.x + eps * vs.x, s.y + eps * vs.y}, box, dt, 100.0);
  auto b2 = reverse_branch(spec, {s.x - eps * vs.x, s.y - eps * vs.y}, box, dt, 100.0);
  std::vector<Point2> pts;
  for (auto it = b1.rbegin(); it != b1.rend(); ++it) pts.push_back({it->x, it->y});
  pts.push_back({s.x, s.y});
  for (const auto& q : b2) pts.push_back({q.x, q.y});
  if (pts.front().x > pts.back().x) std::reverse(pts.begin(), pts.end());
  sep.curve.points = std::move(pts);

  IntegrateOptions io;
  const auto up = integrate(spec, std::max(0.0, s.x + eps * vu.x), std::max(0.0, s.y + eps * vu.y), sep.equilibria, io);
  const auto down = integrate(spec, std::max(0.0, s.x - eps * vu.x), std::max(0.0, s.y - eps * vu.y), sep.equilibria, io);
  if (!up.terminal || !down.terminal || *up.terminal == *down.terminal)
    throw ConsistencyError("unstable branches of the saddle do not reach two distinct equilibria");
  const bool up_is_above = sep.side_of(s.x + eps * vu.x, s.y + eps * vu.y) >= 0;
  sep.above = up_is_above ? *up.terminal : *down.terminal;
  sep.below = up_is_above ? *down.terminal : *up.terminal;
  return sep;
}

BasinProbeReport basin_probe(const SystemSpec& spec, const Separatrix& sep, std::size_t n_probes,
                             double relative_offset) {
  BasinProbeReport rep;
  rep.offset = relative_offset * sep.scale;
  const auto& pts = sep.curve.points;
  if (pts.size() < 2 || n_probes == 0) return rep;

  std::vector<double> arc(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    arc[i] = arc[i - 1] + std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  const double total = arc.back();

  for (std::size_t i = 0; i < n_probes; ++i) {
    const double target = total * (static_cast<double>(i) + 0.5) / static_cast<double>(n_probes);
    std::size_t k = static_cast<std::size_t>(std::upper_bound(arc.begin(), arc.end(), target) - arc.begin());
    k = std::clamp<std::size_t>(k, 1, pts.size() - 1);
    const Point2 a = pts[k - 1];
    const Point2 b = pts[k];
    const double seg = arc[k] - arc[k - 1];
    const double t = seg > 0.0 ? (target - arc[k - 1]) / seg : 0.0;
    const Point2 anchor{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const Point2 normal{-(b.y - a.y) / len, (b.x - a.x) / len};
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    const double px = std::max(0.0, anchor.x + sign * rep.offset * normal.x);
    const double py = std::max(0.0, anchor.y + sign * rep.offset * normal.y);

    const auto tr = integrate(spec, px, py, sep.equilibria);
    ++rep.probes;
    if (tr.terminal && *tr.terminal == sep.label_of(px, py)) {
      ++rep.agree;
    } else if (std::hypot(px - sep.saddle.x_bar, py - sep.saddle.y_bar) > rep.offset) {
      ++rep.far_failures;
    }
  }
  return rep;
}

}  // namespace bistab
