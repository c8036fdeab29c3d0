#include "bistab/regions.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bistab/convexity.hpp"
#include "bistab/errors.hpp"

namespace bistab {

double log_slope(const InteractionFunction& f, double x) {
  const Jet3 j = f.jet(x);
  return std::abs(x * j.c1 / j.c0);
}

namespace {

double safe_log_slope(const InteractionFunction& f, double x) {
  try {
    const double v = log_slope(f, x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

Interval positive_part(const Interval& d) {
  if (d.lo > 0.0) return d;
  return {0.0, d.hi, false, d.hi_closed};
}

}  // namespace

LogSlopeSup sup_log_slope(const InteractionFunction& f) {
  const Interval dom = positive_part(f.domain());
  const auto xs = sampling_grid(dom);
  LogSlopeSup best;
  best.value = -kInf;
  std::size_t k = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = safe_log_slope(f, xs[i]);
    if (v > best.value) {
      best.value = v;
      best.argmax = xs[i];
      k = i;
    }
  }
  if (!std::isfinite(best.value)) return {0.0, 0.0, false};

  // At an open end of the sampled range the supremum is only approached; the grid value stands.
  if (k + 1 == xs.size() && !dom.hi_closed) {
    best.tail_limit = true;
  } else if (k == 0 && !dom.lo_closed) {
    best.tail_limit = true;
  } else if (k > 0 && k + 1 < xs.size()) {
    // Golden-section refinement of an interior maximum.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = xs[k - 1];
    double b = xs[k + 1];
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = safe_log_slope(f, c);
    double fd = safe_log_slope(f, d);
    for (int it = 0; it < 100 && b - a > 1e-14 * b; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = safe_log_slope(f, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = safe_log_slope(f, d);
      }
    }
    const double x = fc > fd ? c : d;
    const double v = std::max(fc, fd);
    if (v > best.value) {
      best.value = v;
      best.argmax = x;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------------------------

E1Region::E1Region(InteractionFunction f, InteractionFunction g, GridField grid,
                   std::vector<Polyline> boundary, bool empty)
    : f_(std::move(f)), g_(std::move(g)), grid_(std::move(grid)), boundary_(std::move(boundary)), empty_(empty) {
  const std::size_t nx = grid_.xs.size();
  const std::size_t ny = grid_.ys.size();
  if (nx == 0 || ny == 0) return;
  for (std::size_t j = 0; j < ny; ++j) {
    touches_[0] = touches_[0] || grid_.inside(0, j);
    touches_[1] = touches_[1] || grid_.inside(nx - 1, j);
  }
  for (std::size_t i = 0; i < nx; ++i) {
    touches_[2] = touches_[2] || grid_.inside(i, 0);
    touches_[3] = touches_[3] || grid_.inside(i, ny - 1);
  }
}

double E1Region::product(double x, double y) const { return safe_log_slope(g_, x) * safe_log_slope(f_, y); }

E1Region e1_region(const SystemSpec& spec, int n) {
  if (n < 4) throw ConfigError("E1 grid needs at least 4 points per axis");
  const auto& f = spec.f;
  const auto& g = spec.g;

  GridField grid;
  grid.xs.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    grid.xs[static_cast<std::size_t>(i)] = u / (1.0 - u);
  }
  grid.ys = grid.xs;
  std::vector<double> lg(grid.xs.size());
  std::vector<double> lf(grid.ys.size());
  for (std::size_t i = 0; i < grid.xs.size(); ++i) lg[i] = safe_log_slope(g, grid.xs[i]);
  for (std::size_t j = 0; j < grid.ys.size(); ++j) lf[j] = safe_log_slope(f, grid.ys[j]);
  grid.values.resize(grid.xs.size() * grid.ys.size());
  bool any_inside = false;
  for (std::size_t j = 0; j < grid.ys.size(); ++j) {
    for (std::size_t i = 0; i < grid.xs.size(); ++i) {
      const double v = lg[i] * lf[j] - 1.0;
      grid.values[j * grid.xs.size() + i] = v;
      any_inside = any_inside || v > 0.0;
    }
  }
  grid.field = [f, g](double x, double y) { return safe_log_slope(g, x) * safe_log_slope(f, y) - 1.0; };

  // A region below the grid resolution is reported empty as well.
  const bool empty = sup_log_slope(f).value * sup_log_slope(g).value <= 1.0 || !any_inside;
  std::vector<Polyline> boundary;
  if (!empty) boundary = marching_squares(grid);
  return {f, g, std::move(grid), std::move(boundary), empty};
}

// ---------------------------------------------------------------------------------------------

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::closed_form_hill: return "closed_form_hill";
    case Provenance::numeric_contour: return "numeric_contour";
    case Provenance::symmetric_interval: return "symmetric_interval";
  }
  return "numeric_contour";
}

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::band: return "band";
    case Membership::out_of_window: return "out_of_window";
  }
  return "outside";
}

struct RegionBoundary::Index {
  struct Segment {
    Point2 a;
    Point2 b;
  };

  Index(InteractionFunction f_, InteractionFunction g_) : f(std::move(f_)), g(std::move(g_)) {}

  InteractionFunction f;
  InteractionFunction g;
  double box_lo = 0.0;
  double box_hi = 0.0;
  bool touches[4] = {false, false, false, false};

  std::vector<std::vector<Point2>> polygons;  // in (log alpha, log beta)
  std::vector<Segment> segments;

  // Bucket grid in compressed-row form.
  double x0 = 0.0;
  double y0 = 0.0;
  double cell = 1.0;
  std::size_t nb = 1;
  std::vector<std::size_t> poly_start;
  std::vector<std::uint32_t> poly_items;
  std::vector<std::size_t> seg_start;
  std::vector<std::uint32_t> seg_items;

  std::size_t bucket_of(double v, double origin) const {
    const double t = std::floor((v - origin) / cell);
    if (t < 0.0) return 0;
    return std::min(nb - 1, static_cast<std::size_t>(t));
  }

  template <typename Box>
  static void fill(std::size_t nb, std::size_t count, const Box& box_of, std::vector<std::size_t>& start,
                   std::vector<std::uint32_t>& items) {
    std::vector<std::size_t> counts(nb * nb + 1, 0);
    for (std::size_t k = 0; k < count; ++k) {
      const auto [i0, i1, j0, j1] = box_of(k);
      for (std::size_t j = j0; j <= j1; ++j)
        for (std::size_t i = i0; i <= i1; ++i) ++counts[j * nb + i + 1];
    }
    for (std::size_t b = 1; b < counts.size(); ++b) counts[b] += counts[b - 1];
    start = counts;
    items.assign(counts.back(), 0);
    std::vector<std::size_t> pos(counts.begin(), counts.end() - 1);
    for (std::size_t k = 0; k < count; ++k) {
      const auto [i0, i1, j0, j1] = box_of(k);
      for (std::size_t j = j0; j <= j1; ++j)
        for (std::size_t i = i0; i <= i1; ++i) items[pos[j * nb + i]++] = static_cast<std::uint32_t>(k);
    }
  }
};

namespace {

bool point_in_polygon(const std::vector<Point2>& poly, Point2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) in = !in;
    }
  }
  return in;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

std::optional<Point2> log_image(const InteractionFunction& f, const InteractionFunction& g, Point2 q) {
  try {
    const double la = std::log(q.x / f.value(q.y));
    const double lb = std::log(q.y / g.value(q.x));
    if (!std::isfinite(la) || !std::isfinite(lb)) return std::nullopt;
    return Point2{la, lb};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

RegionBoundary map_G1(const E1Region& region, const SystemSpec& spec, double band) {
  if (region.empty()) throw ConfigError("the E1 region is empty; nothing to map");
  auto index = std::make_shared<RegionBoundary::Index>(spec.f, spec.g);
  index->box_lo = region.grid().xs.front();
  index->box_hi = region.grid().xs.back();
  index->touches[0] = region.touches_x_lo();
  index->touches[1] = region.touches_x_hi();
  index->touches[2] = region.touches_y_lo();
  index->touches[3] = region.touches_y_hi();

  const auto& grid = region.grid();
  for (std::size_t j = 0; j + 1 < grid.ys.size(); ++j) {
    for (std::size_t i = 0; i + 1 < grid.xs.size(); ++i) {
      if (!grid.inside(i, j) && !grid.inside(i + 1, j) && !grid.inside(i, j + 1) && !grid.inside(i + 1, j + 1))
        continue;
      for (const auto& poly : clip_cell(grid, i, j)) {
        std::vector<Point2> mapped;
        mapped.reserve(poly.size());
        for (const auto& q : poly) {
          if (auto m = log_image(spec.f, spec.g, q)) mapped.push_back(*m);
        }
        if (mapped.size() == poly.size() && mapped.size() >= 3) index->polygons.push_back(std::move(mapped));
      }
    }
  }

  RegionBoundary out;
  out.provenance = Provenance::numeric_contour;
  out.indeterminate_band = band;
  for (const auto& line : region.boundary()) {
    Polyline mapped;
    mapped.closed = line.closed;
    std::optional<Point2> prev;
    for (const auto& q : line.points) {
      const auto m = log_image(spec.f, spec.g, q);
      if (m) mapped.points.push_back({std::exp(m->x), std::exp(m->y)});
      if (m && prev) index->segments.push_back({*prev, *m});
      prev = m;
    }
    out.curves.push_back(std::move(mapped));
  }

  // Bucket grid over the bounding box of everything mapped.
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  auto grow = [&](Point2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const auto& poly : index->polygons)
    for (const auto& p : poly) grow(p);
  for (const auto& s : index->segments) {
    grow(s.a);
    grow(s.b);
  }
  if (!(xmin <= xmax)) xmin = xmax = ymin = ymax = 0.0;
  index->nb = 512;
  index->x0 = xmin - 2.0 * band;
  index->y0 = ymin - 2.0 * band;
  index->cell = std::max({(xmax - xmin + 4.0 * band) / index->nb, (ymax - ymin + 4.0 * band) / index->nb, 1e-12});

  auto& ix = *index;
  const auto poly_box = [&ix](std::size_t k) {
    double a = kInf, b = -kInf, c = kInf, d = -kInf;
    for (const auto& p : ix.polygons[k]) {
      a = std::min(a, p.x);
      b = std::max(b, p.x);
      c = std::min(c, p.y);
      d = std::max(d, p.y);
    }
    return std::array<std::size_t, 4>{ix.bucket_of(a, ix.x0), ix.bucket_of(b, ix.x0), ix.bucket_of(c, ix.y0),
                                      ix.bucket_of(d, ix.y0)};
  };
  const auto seg_box = [&ix, band](std::size_t k) {
    const auto& s = ix.segments[k];
    return std::array<std::size_t, 4>{
        ix.bucket_of(std::min(s.a.x, s.b.x) - band, ix.x0), ix.bucket_of(std::max(s.a.x, s.b.x) + band, ix.x0),
        ix.bucket_of(std::min(s.a.y, s.b.y) - band, ix.y0), ix.bucket_of(std::max(s.a.y, s.b.y) + band, ix.y0)};
  };
  RegionBoundary::Index::fill(ix.nb, ix.polygons.size(), poly_box, ix.poly_start, ix.poly_items);
  RegionBoundary::Index::fill(ix.nb, ix.segments.size(), seg_box, ix.seg_start, ix.seg_items);

  out.index = std::move(index);
  return out;
}

Membership RegionBoundary::classify(double alpha, double beta) const {
  if (!index) return Membership::outside;
  const Index& ix = *index;

  // Window: the saddle (x, y) would satisfy x = alpha f(y), y = beta g(x).
  const double sup_g = ix.g.sup_on(kInf);
  const Interval fr = ix.f.image({0.0, beta * sup_g, true, true});
  const Interval gr = ix.g.image({0.0, alpha * fr.hi, true, true});
  if ((ix.touches[0] && alpha * fr.lo <= ix.box_lo) || (ix.touches[1] && alpha * fr.hi >= ix.box_hi) ||
      (ix.touches[2] && beta * gr.lo <= ix.box_lo) || (ix.touches[3] && beta * gr.hi >= ix.box_hi))
    return Membership::out_of_window;

  const Point2 p{std::log(alpha), std::log(beta)};
  const double lo_x = ix.x0;
  const double lo_y = ix.y0;
  const double hi_x = ix.x0 + ix.cell * static_cast<double>(ix.nb);
  const double hi_y = ix.y0 + ix.cell * static_cast<double>(ix.nb);
  if (p.x < lo_x || p.x >= hi_x || p.y < lo_y || p.y >= hi_y) return Membership::outside;
  const std::size_t b = ix.bucket_of(p.y, ix.y0) * ix.nb + ix.bucket_of(p.x, ix.x0);
  for (std::size_t k = ix.seg_start[b]; k < ix.seg_start[b + 1]; ++k) {
    const auto& s = ix.segments[ix.seg_items[k]];
    if (segment_distance(p, s.a, s.b) <= indeterminate_band) return Membership::band;
  }
  for (std::size_t k = ix.poly_start[b]; k < ix.poly_start[b + 1]; ++k)
    if (point_in_polygon(ix.polygons[ix.poly_items[k]], p)) return Membership::inside;
  return Membership::outside;
}

// ---------------------------------------------------------------------------------------------

std::string_view to_string(ParameterClass c) noexcept {
  switch (c) {
    case ParameterClass::monostable: return "monostable";
    case ParameterClass::bistable: return "bistable";
    case ParameterClass::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

struct HillPair {
  HillParams f;
  HillParams g;
};

std::optional<HillPair> unit_gain_hill_pair(const SystemSpec& spec) {
  if (spec.f.family() != Family::hill || spec.g.family() != Family::hill) return std::nullopt;
  if (spec.f.traits().gain != 1.0 || spec.g.traits().gain != 1.0) return std::nullopt;
  const auto* hf = std::get_if<HillParams>(&spec.f.params());
  const auto* hg = std::get_if<HillParams>(&spec.g.params());
  if (!hf || !hg || hf->lambda >= 1.0 || hg->lambda >= 1.0) return std::nullopt;
  return HillPair{*hf, *hg};
}

}  // namespace

Classification classify_parameters(const SystemSpec& spec, const ClassifyOptions& options) {
  const EquilibriumSet set = find_equilibria(spec, options.equilibria);
  Classification c;
  c.count = static_cast<int>(set.size());
  c.min_jac_gap = set.min_jac_gap();
  if (set.has_indeterminate() || c.count % 2 == 0) c.cls = ParameterClass::indeterminate;
  else c.cls = c.count == 1 ? ParameterClass::monostable : ParameterClass::bistable;

  if (options.closed_form_check && c.cls != ParameterClass::indeterminate) {
    if (const auto pair = unit_gain_hill_pair(spec)) {
      const auto cf = hill_region_closed_form(pair->f.lambda, pair->g.lambda, pair->f.a, pair->g.a);
      bool member = false;
      for (const auto& e : set.equilibria) member = member || cf.contains(e.x_bar / pair->g.z0, e.y_bar / pair->f.z0);
      c.closed_form_bistable = member;
      if (member != (c.cls == ParameterClass::bistable) && c.min_jac_gap > options.band)
        throw ConsistencyError(fmt::format(
            "closed-form region says {} but {} equilibria were found (f = {}, g = {}, alpha = {}, beta = {})",
            member ? "bistable" : "monostable", c.count, spec.f.name(), spec.g.name(), spec.alpha, spec.beta));
    }
  }
  return c;
}

namespace {

/// Runs body(k) for k in [0, n) on a few threads. Rethrows the exception of the smallest failing k.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, const Body& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(mu);
        if (k < failed_at) {
          failed_at = k;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepResult region_sweep(const InteractionFunction& f, const InteractionFunction& g,
                         const std::vector<double>& alphas, const std::vector<double>& betas,
                         const ClassifyOptions& options, unsigned threads) {
  for (const auto* grid : {&alphas, &betas})
    for (double v : *grid)
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(fmt::format("sweep grid value {} is not positive", v));
  ClassifyOptions opts = options;
  if (!opts.equilibria.certified) opts.equilibria.certified = certified_pair(certify_gamma(f), certify_gamma(g));

  SweepResult out{alphas, betas, std::vector<Classification>(alphas.size() * betas.size())};
  parallel_for(out.cells.size(), threads, [&](std::size_t k) {
    const std::size_t ia = k / betas.size();
    const std::size_t ib = k % betas.size();
    out.cells[k] = classify_parameters({f, g, alphas[ia], betas[ib]}, opts);
  });
  return out;
}

SymmetricSweepResult symmetric_sweep(double a, double z0, const std::vector<double>& lambdas,
                                     const std::vector<double>& alphas, unsigned threads) {
  std::vector<InteractionFunction> fs;
  std::vector<bool> certified;
  for (double l : lambdas) {
    fs.push_back(make_hill(l, a, z0));
    const auto cert = certify_gamma(fs.back());
    certified.push_back(certified_pair(cert, cert));
  }
  SymmetricSweepResult out{lambdas, alphas, std::vector<Classification>(lambdas.size() * alphas.size())};
  parallel_for(out.cells.size(), threads, [&](std::size_t k) {
    const std::size_t il = k / alphas.size();
    const std::size_t ia = k % alphas.size();
    ClassifyOptions opts;
    opts.equilibria.certified = certified[il];
    out.cells[k] = classify_parameters({fs[il], fs[il], alphas[ia], alphas[ia]}, opts);
  });
  return out;
}

std::vector<double> make_grid(double lo, double hi, std::size_t n, bool logarithmic) {
  if (n == 0) throw ConfigError("grid needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw ConfigError("grid bounds must satisfy lo <= hi");
  if (logarithmic && !(lo > 0.0)) throw ConfigError("logarithmic grid needs lo > 0");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = logarithmic ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  if (n > 1) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

}  // namespace bistab
