#include "bistab/export.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>

namespace bistab {

namespace {

void write_row(std::ostream& out, double a, double b, const Classification& c) {
  fmt::print(out, "{},{},{},{},{}\n", a, b, to_string(c.cls), c.count, c.min_jac_gap);
}

/// Maps a data rectangle onto the 900 x 900 plot area of the 1000 x 1000 canvas.
struct Frame {
  double x0, x1, y0, y1;
  bool logx = false;
  bool logy = false;

  double sx(double x) const {
    const double t = logx ? (std::log(x) - std::log(x0)) / (std::log(x1) - std::log(x0)) : (x - x0) / (x1 - x0);
    return 50.0 + 900.0 * t;
  }
  double sy(double y) const {
    const double t = logy ? (std::log(y) - std::log(y0)) / (std::log(y1) - std::log(y0)) : (y - y0) / (y1 - y0);
    return 950.0 - 900.0 * t;
  }
};

std::string polyline_path(const Frame& fr, const std::vector<Point2>& pts) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = fr.sx(pts[i].x);
    const double y = fr.sy(pts[i].y);
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    d += fmt::format("{}{:.3f} {:.3f}", d.empty() ? "M" : " L", x, y);
  }
  return d;
}

std::string path(const std::string& d, const std::string& stroke, const std::string& fill, double width) {
  return fmt::format("  <path d=\"{}\" stroke=\"{}\" fill=\"{}\" stroke-width=\"{}\"/>\n", d, stroke, fill, width);
}

std::string circle(double cx, double cy, double r) {
  return fmt::format("M{:.3f} {:.3f} a{} {} 0 1 0 {} 0 a{} {} 0 1 0 {} 0 Z", cx - r, cy, r, r, 2 * r, r, r, -2 * r);
}

std::string axes() { return path("M50 950 L950 950 M50 950 L50 50", "black", "none", 2); }

std::string open_svg() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "alpha,beta,class,count,min_jac_gap\n";
  for (std::size_t ia = 0; ia < sweep.alphas.size(); ++ia)
    for (std::size_t ib = 0; ib < sweep.betas.size(); ++ib)
      write_row(out, sweep.alphas[ia], sweep.betas[ib], sweep.at(ia, ib));
}

void write_symmetric_csv(std::ostream& out, const SymmetricSweepResult& sweep) {
  out << "lambda,alpha,class,count,min_jac_gap\n";
  for (std::size_t il = 0; il < sweep.lambdas.size(); ++il)
    for (std::size_t ia = 0; ia < sweep.alphas.size(); ++ia)
      write_row(out, sweep.lambdas[il], sweep.alphas[ia], sweep.at(il, ia));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,x,y\n";
  for (const auto& s : trajectory.samples) fmt::print(out, "{},{},{}\n", s.t, s.x, s.y);
}

void write_polyline_csv(std::ostream& out, const Polyline& line) {
  out << "x,y\n";
  for (const auto& p : line.points) fmt::print(out, "{},{}\n", p.x, p.y);
}

void write_region_csv(std::ostream& out, const std::vector<Polyline>& curves) {
  out << "curve,alpha,beta\n";
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (const auto& p : curves[c].points) fmt::print(out, "{},{},{}\n", c, p.x, p.y);
}

std::string phase_plane_svg(const SystemSpec& spec, const EquilibriumSet& equilibria, const Separatrix* separatrix,
                            const std::vector<Trajectory>& trajectories) {
  double xmax = spec.alpha * spec.f.sup_on(kInf);
  double ymax = spec.beta * spec.g.sup_on(kInf);
  for (const auto& e : equilibria.equilibria) {
    xmax = std::max(xmax, e.x_bar);
    ymax = std::max(ymax, e.y_bar);
  }
  if (!std::isfinite(xmax)) xmax = 1.0;
  if (!std::isfinite(ymax)) ymax = 1.0;
  const Frame fr{0.0, 1.05 * xmax, 0.0, 1.05 * ymax};

  std::string svg = open_svg();
  svg += axes();
  // Nullclines x = alpha f(y) and y = beta g(x).
  constexpr int kSamples = 400;
  std::vector<Point2> nx, ny;
  for (int i = 0; i <= kSamples; ++i) {
    const double y = fr.y1 * i / kSamples;
    const double x = fr.x1 * i / kSamples;
    if (spec.f.domain().contains(y)) nx.push_back({spec.alpha * spec.f.value(y), y});
    if (spec.g.domain().contains(x)) ny.push_back({x, spec.beta * spec.g.value(x)});
  }
  svg += path(polyline_path(fr, nx), "#1f77b4", "none", 2);
  svg += path(polyline_path(fr, ny), "#d62728", "none", 2);
  for (const auto& tr : trajectories) {
    std::vector<Point2> pts;
    for (const auto& s : tr.samples) pts.push_back({s.x, s.y});
    svg += path(polyline_path(fr, pts), "#7f7f7f", "none", 1);
  }
  if (separatrix) svg += path(polyline_path(fr, separatrix->curve.points), "#2ca02c", "none", 2.5);
  for (const auto& e : equilibria.equilibria) {
    const bool stable = e.stability == Stability::stable;
    svg += path(circle(fr.sx(e.x_bar), fr.sy(e.y_bar), 8), "black", stable ? "black" : "white", 2);
  }
  svg += "</svg>\n";
  return svg;
}

std::string sweep_svg(const SweepResult& sweep, const std::vector<Polyline>& curves) {
  const auto& as = sweep.alphas;
  const auto& bs = sweep.betas;
  std::string svg = open_svg();
  if (as.empty() || bs.empty()) return svg + "</svg>\n";
  const bool logx = as.front() > 0.0 && as.size() > 1;
  const bool logy = bs.front() > 0.0 && bs.size() > 1;
  const Frame fr{as.front(), as.back() > as.front() ? as.back() : as.front() + 1.0, bs.front(),
                 bs.back() > bs.front() ? bs.back() : bs.front() + 1.0, logx, logy};
  // Each cell spans halfway to its neighbours.
  auto edges = [](const std::vector<double>& v, auto scale) {
    std::vector<double> e(v.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) e[i] = i == 0 ? scale(v[0]) : 0.5 * (scale(v[i - 1]) + scale(v[i]));
    e[v.size()] = scale(v.back());
    return e;
  };
  const auto ex = edges(as, [&](double a) { return fr.sx(a); });
  const auto ey = edges(bs, [&](double b) { return fr.sy(b); });
  std::string bi, undecided;
  for (std::size_t ia = 0; ia < as.size(); ++ia) {
    for (std::size_t ib = 0; ib < bs.size(); ++ib) {
      const auto& c = sweep.at(ia, ib);
      if (c.cls == ParameterClass::monostable) continue;
      const auto rect = fmt::format("M{:.3f} {:.3f} L{:.3f} {:.3f} L{:.3f} {:.3f} L{:.3f} {:.3f} Z ", ex[ia], ey[ib],
                                    ex[ia + 1], ey[ib], ex[ia + 1], ey[ib + 1], ex[ia], ey[ib + 1]);
      (c.cls == ParameterClass::bistable ? bi : undecided) += rect;
    }
  }
  if (!bi.empty()) svg += path(bi, "none", "#6baed6", 0);
  if (!undecided.empty()) svg += path(undecided, "#de2d26", "none", 1);
  for (const auto& c : curves) {
    std::vector<Point2> inside;
    for (const auto& p : c.points)
      if (p.x >= fr.x0 && p.x <= fr.x1 && p.y >= fr.y0 && p.y <= fr.y1) inside.push_back(p);
    if (inside.size() > 1) svg += path(polyline_path(fr, inside), "black", "none", 1.5);
  }
  svg += axes();
  svg += "</svg>\n";
  return svg;
}

}  // namespace bistab
