#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "bistab/convexity.hpp"
#include "bistab/cyclic.hpp"
#include "bistab/dynamics.hpp"
#include "bistab/equilibria.hpp"
#include "bistab/errors.hpp"
#include "bistab/export.hpp"
#include "bistab/function.hpp"
#include "bistab/hill_regions.hpp"
#include "bistab/regions.hpp"

namespace bistab::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

InteractionFunction parse_field(const std::string& field, const std::string& text) {
  try {
    return parse_function_spec(text);
  } catch (const ParseError& e) {
    throw ParseError(e.offset(), e.expected(), fmt::format("{}: {}", field, e.what()));
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", field, e.what()));
  }
}

GridSpec parse_grid_field(const std::string& field, const std::string& text) {
  try {
    return parse_grid(text);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", field, e.what()));
  }
}

std::vector<double> expand(const GridSpec& g) { return make_grid(g.lo, g.hi, g.n, g.logarithmic); }

void require_positive(const std::string& field, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(fmt::format("{}: must be positive, got {}", field, v));
}

void write_file(const std::string& field, const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError(fmt::format("{}: cannot open '{}' for writing", field, path));
  body(file);
  if (!file) throw ConfigError(fmt::format("{}: write to '{}' failed", field, path));
}

/// "-" selects stdout.
void emit(std::ostream& out, const std::string& field, const std::string& path,
          const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(out);
  } else {
    write_file(field, path, body);
  }
}

json to_json(const ConvexityCertificate& c) {
  json j;
  j["verdict"] = std::string(to_string(c.verdict));
  j["alpha_exponent"] = c.alpha_exponent;
  j["witness"] = c.witness ? json(*c.witness) : json(nullptr);
  j["margin"] = number(c.margin);
  j["evaluated"] = c.evaluated;
  j["excluded"] = c.excluded;
  return j;
}

json to_json(const EquilibriumSet& set) {
  json list = json::array();
  for (const auto& e : set.equilibria) {
    list.push_back({{"x_bar", e.x_bar},
                    {"y_bar", e.y_bar},
                    {"jac_product", e.jac_product},
                    {"stability", std::string(to_string(e.stability))},
                    {"bracket", {e.bracket_lo, e.bracket_hi}}});
  }
  return list;
}

json system_json(const std::string& f, const std::string& g, double alpha, double beta) {
  return {{"f", f}, {"g", g}, {"alpha", alpha}, {"beta", beta}};
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------------------------

struct CertifyArgs {
  std::string f;
  double exponent = 0.5;
  std::string format = "json";
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  auto fn = parse_field("--f", a.f);
  if (!(a.exponent > 0.0)) throw ConfigError("--exponent: must be positive");
  auto cert = certify_gamma(fn, a.exponent);
  if (a.format == "text") {
    out << fmt::format("verdict: {}\nmargin: {}\n", to_string(cert.verdict), cert.margin);
    if (cert.witness) out << fmt::format("witness: {}\n", *cert.witness);
    return kExitOk;
  }
  json j = {{"schema_version", kSchemaVersion}, {"command", "certify"}, {"function", a.f}};
  j.update(to_json(cert));
  print(out, j);
  return kExitOk;
}

struct SystemArgs {
  std::string f;
  std::string g;
  double alpha = 0.0;
  double beta = 0.0;

  SystemSpec build() const {
    require_positive("--alpha", alpha);
    require_positive("--beta", beta);
    SystemSpec spec{parse_field("--f", f), parse_field("--g", g), alpha, beta};
    validate(spec);
    return spec;
  }
};

void add_system(CLI::App* cmd, SystemArgs& s, bool with_parameters) {
  cmd->add_option("--f", s.f, "Function acting on y in x' = alpha f(y) - x")->required();
  cmd->add_option("--g", s.g, "Function acting on x in y' = beta g(x) - y")->required();
  if (with_parameters) {
    cmd->add_option("--alpha", s.alpha, "Production rate of x")->required();
    cmd->add_option("--beta", s.beta, "Production rate of y")->required();
  }
}

int cmd_equilibria(const SystemArgs& a, std::ostream& out) {
  auto spec = a.build();
  auto set = find_equilibria(spec);
  json j = {{"schema_version", kSchemaVersion}, {"command", "equilibria"}};
  j["system"] = system_json(a.f, a.g, a.alpha, a.beta);
  j["orientation"] = spec.orientation() == Orientation::cooperative ? "cooperative" : "competitive";
  j["count"] = set.size();
  j["count_certified"] = set.count_certified;
  j["equilibria"] = to_json(set);
  j["warnings"] = set.warnings;
  print(out, j);
  return kExitOk;
}

struct PhaseArgs {
  SystemArgs system;
  double x0 = 0.0;
  double y0 = 0.0;
  double t_max = 200.0;
  double dt = 1e-2;
  std::string svg;
  std::string csv;
  std::string separatrix_csv;
};

int cmd_phase(const PhaseArgs& a, std::ostream& out) {
  auto spec = a.system.build();
  if (!(a.x0 >= 0.0) || !(a.y0 >= 0.0)) throw ConfigError("--x0/--y0: start must lie in the closed quadrant");
  require_positive("--t-max", a.t_max);
  require_positive("--dt", a.dt);

  auto set = find_equilibria(spec);
  std::optional<Separatrix> sep;
  try {
    sep = compute_separatrix(spec);
  } catch (const NotBistableError&) {
  }
  IntegrateOptions opts;
  opts.t_max = a.t_max;
  opts.dt = a.dt;
  auto traj = integrate(spec, a.x0, a.y0, set, opts);

  if (!a.svg.empty()) {
    auto svg = phase_plane_svg(spec, set, sep ? &*sep : nullptr, {traj});
    write_file("--svg", a.svg, [&](std::ostream& os) { os << svg; });
  }
  if (!a.csv.empty()) write_file("--csv", a.csv, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  if (!a.separatrix_csv.empty()) {
    if (!sep) throw ConfigError("--separatrix-csv: the system is not bistable, there is no separatrix");
    write_file("--separatrix-csv", a.separatrix_csv, [&](std::ostream& os) { write_polyline_csv(os, sep->curve); });
  }

  json j = {{"schema_version", kSchemaVersion}, {"command", "phase"}};
  j["system"] = system_json(a.system.f, a.system.g, a.system.alpha, a.system.beta);
  j["equilibria"] = to_json(set);
  json t = {{"start", {a.x0, a.y0}}, {"samples", traj.samples.size()}, {"step", traj.step}};
  t["terminal"] = traj.terminal ? json(*traj.terminal) : json(nullptr);
  if (!traj.samples.empty()) t["end"] = {traj.samples.back().x, traj.samples.back().y};
  j["trajectory"] = t;
  if (sep) {
    const auto& pts = sep->curve.points;
    j["separatrix"] = {{"points", pts.size()},
                       {"x_extent", {pts.front().x, pts.back().x}},
                       {"increasing", sep->increasing},
                       {"above", sep->above},
                       {"below", sep->below}};
  } else {
    j["separatrix"] = nullptr;
  }
  print(out, j);
  return kExitOk;
}

struct RegionArgs {
  SystemArgs system;
  int grid = 512;
  double band = 1e-3;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string csv;
  std::string e1_csv;
};

std::optional<HillRegionParams> hill_closed_form(const SystemSpec& spec) {
  const auto* hf = std::get_if<HillParams>(&spec.f.params());
  const auto* hg = std::get_if<HillParams>(&spec.g.params());
  if (!hf || !hg || hf->lambda >= 1.0 || hg->lambda >= 1.0 || hf->a < 1.0 || hg->a < 1.0) return std::nullopt;
  return hill_region_closed_form(hf->lambda, hg->lambda, hf->a, hg->a);
}

int cmd_region(const RegionArgs& a, std::ostream& out) {
  SystemArgs sys = a.system;
  if (sys.alpha == 0.0) sys.alpha = 1.0;
  if (sys.beta == 0.0) sys.beta = 1.0;
  if (a.alpha) sys.alpha = *a.alpha;
  if (a.beta) sys.beta = *a.beta;
  auto spec = sys.build();
  if (a.grid < 16) throw ConfigError("--grid: at least 16 cells per side");
  require_positive("--band", a.band);

  auto sf = sup_log_slope(spec.f);
  auto sg = sup_log_slope(spec.g);
  auto e1 = e1_region(spec, a.grid);

  json j = {{"schema_version", kSchemaVersion}, {"command", "region"}, {"f", sys.f}, {"g", sys.g}};
  j["sup_log_slope"] = {{"f", {{"value", sf.value}, {"argmax", number(sf.argmax)}, {"tail_limit", sf.tail_limit}}},
                        {"g", {{"value", sg.value}, {"argmax", number(sg.argmax)}, {"tail_limit", sg.tail_limit}}}};
  j["slope_product"] = sf.value * sg.value;
  j["empty"] = e1.empty();

  if (auto cf = hill_closed_form(spec)) {
    j["closed_form"] = {{"branch", std::string(to_string(cf->branch))},
                        {"rho", number(cf->rho)},
                        {"x_range", {number(cf->x_minus), number(cf->x_plus)}},
                        {"y_range", {number(cf->y_minus), number(cf->y_plus)}}};
  }

  std::optional<RegionBoundary> boundary;
  if (!e1.empty()) boundary = map_G1(e1, spec, a.band);
  if (boundary) {
    j["provenance"] = std::string(to_string(boundary->provenance));
    j["curves"] = boundary->curves.size();
    std::size_t pts = 0;
    for (const auto& c : boundary->curves) pts += c.points.size();
    j["curve_points"] = pts;
  }

  if (a.alpha && a.beta) {
    auto cls = classify_parameters(spec);
    json q = {{"alpha", *a.alpha},
              {"beta", *a.beta},
              {"class", std::string(to_string(cls.cls))},
              {"count", cls.count},
              {"min_jac_gap", number(cls.min_jac_gap)}};
    q["membership"] = boundary ? json(std::string(to_string(boundary->classify(*a.alpha, *a.beta)))) : json("outside");
    j["query"] = q;
  }

  if (!a.csv.empty()) {
    std::vector<Polyline> curves = boundary ? boundary->curves : std::vector<Polyline>{};
    write_file("--csv", a.csv, [&](std::ostream& os) { write_region_csv(os, curves); });
  }
  if (!a.e1_csv.empty()) {
    write_file("--e1-csv", a.e1_csv, [&](std::ostream& os) {
      os << "curve,x,y\n";
      for (std::size_t c = 0; c < e1.boundary().size(); ++c)
        for (const auto& p : e1.boundary()[c].points) os << fmt::format("{},{},{}\n", c, p.x, p.y);
    });
  }
  print(out, j);
  return kExitOk;
}

struct SweepArgs {
  SystemArgs system;
  std::string alpha_grid;
  std::string beta_grid;
  std::string out = "-";
  std::string svg;
  unsigned threads = 0;
  bool no_curves = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  auto f = parse_field("--f", a.system.f);
  auto g = parse_field("--g", a.system.g);
  validate(SystemSpec{f, g, 1.0, 1.0});
  auto alphas = expand(parse_grid_field("--alpha-grid", a.alpha_grid));
  auto betas = expand(parse_grid_field("--beta-grid", a.beta_grid));
  auto sweep = region_sweep(f, g, alphas, betas, {}, a.threads);

  if (!a.svg.empty()) {
    std::vector<Polyline> curves;
    if (!a.no_curves) {
      SystemSpec spec{f, g, 1.0, 1.0};
      auto e1 = e1_region(spec);
      if (!e1.empty()) curves = map_G1(e1, spec).curves;
    }
    auto svg = sweep_svg(sweep, curves);
    write_file("--svg", a.svg, [&](std::ostream& os) { os << svg; });
  }
  emit(out, "--out", a.out, [&](std::ostream& os) { write_sweep_csv(os, sweep); });
  return kExitOk;
}

struct SymmetricArgs {
  std::optional<double> lambda;
  double a = 0.0;
  double z0 = 1.0;
  std::string lambda_grid;
  std::string alpha_grid;
  std::string out = "-";
  unsigned threads = 0;
};

int cmd_symmetric(const SymmetricArgs& s, std::ostream& out) {
  require_positive("--z0", s.z0);
  if (!(s.a > 0.0)) throw ConfigError("--a: must be positive");
  if (!s.lambda_grid.empty() || !s.alpha_grid.empty()) {
    if (s.lambda_grid.empty() || s.alpha_grid.empty())
      throw ConfigError("--lambda-grid and --alpha-grid must be given together");
    auto lg = parse_grid_field("--lambda-grid", s.lambda_grid);
    auto ag = parse_grid_field("--alpha-grid", s.alpha_grid);
    auto sweep = symmetric_sweep(s.a, s.z0, expand(lg), expand(ag), s.threads);
    emit(out, "--out", s.out, [&](std::ostream& os) { write_symmetric_csv(os, sweep); });
    return kExitOk;
  }
  if (!s.lambda) throw ConfigError("--lambda: required unless --lambda-grid/--alpha-grid are given");
  auto r = symmetric_region(*s.lambda, s.a, s.z0);
  json j = {{"schema_version", kSchemaVersion},
            {"command", "symmetric"},
            {"lambda", *s.lambda},
            {"a", s.a},
            {"z0", s.z0},
            {"kind", std::string(to_string(r.kind))},
            {"lambda0_minus", number(r.lambda0_minus)},
            {"lambda0_plus", number(r.lambda0_plus)}};
  j["interval"] = r.empty() ? json(nullptr) : json::array({number(r.lo), number(r.hi)});
  print(out, j);
  return kExitOk;
}

struct CyclicArgs {
  std::vector<std::string> functions;
};

int cmd_cyclic(const CyclicArgs& a, std::ostream& out) {
  CyclicSpec spec;
  for (std::size_t i = 0; i < a.functions.size(); ++i)
    spec.functions.push_back(parse_field(fmt::format("--fn[{}]", i + 1), a.functions[i]));
  if (spec.functions.size() < 2) throw ConfigError("--fn: at least two functions are needed");

  auto result = cyclic_equilibria(spec);
  auto cert = cyclic_certificate(spec);

  json j = {{"schema_version", kSchemaVersion}, {"command", "cyclic"}, {"functions", a.functions}};
  j["n"] = spec.functions.size();
  j["decreasing_count"] = result.decreasing_count;
  json members = json::array();
  for (auto v : cert.members) members.push_back(std::string(to_string(v)));
  j["certificate"] = {{"verdict", std::string(to_string(cert.verdict))}, {"members", members}};
  json eqs = json::array();
  for (const auto& e : result.equilibria) {
    eqs.push_back({{"x", e.x},
                   {"derivative_product", e.derivative_product},
                   {"dominant_real", e.dominant_real},
                   {"stability", std::string(to_string(e.stability))}});
  }
  j["count"] = result.equilibria.size();
  j["equilibria"] = eqs;
  j["note"] = "equilibria only; for n >= 3 some trajectories may be periodic";
  print(out, j);
  return kExitOk;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw ConfigError(fmt::format("grid '{}' is not of the form lo:hi:n[:log|:lin]", text));

  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
      throw ConfigError(fmt::format("grid '{}': '{}' is not a finite number", text, s));
    return v;
  };

  GridSpec g;
  g.lo = to_double(parts[0]);
  g.hi = to_double(parts[1]);
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(parts[2], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != parts[2].size() || n < 1)
    throw ConfigError(fmt::format("grid '{}': point count '{}' must be a positive integer", text, parts[2]));
  g.n = static_cast<std::size_t>(n);
  if (parts.size() == 4) {
    if (parts[3] == "lin") {
      g.logarithmic = false;
    } else if (parts[3] != "log") {
      throw ConfigError(fmt::format("grid '{}': spacing must be 'log' or 'lin'", text));
    }
  }
  if (g.hi < g.lo) throw ConfigError(fmt::format("grid '{}': hi is below lo", text));
  if (g.logarithmic && !(g.lo > 0.0))
    throw ConfigError(fmt::format("grid '{}': logarithmic spacing needs lo > 0 (append ':lin')", text));
  return g;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bistability analysis of two-species monotone switches", "bistab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bistab 0.1.0");

  CertifyArgs certify;
  auto* c_certify = app.add_subcommand("certify", "gamma^alpha convexity certificate of one function");
  c_certify->add_option("--f", certify.f, "Function spec")->required();
  c_certify->add_option("--exponent", certify.exponent, "Exponent alpha of the gamma^alpha test")
      ->capture_default_str();
  c_certify->add_option("--format", certify.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  SystemArgs equilibria;
  auto* c_equilibria = app.add_subcommand("equilibria", "Equilibria and their stability");
  add_system(c_equilibria, equilibria, true);

  PhaseArgs phase;
  auto* c_phase = app.add_subcommand("phase", "Phase plane: trajectory, separatrix and SVG");
  add_system(c_phase, phase.system, true);
  c_phase->add_option("--x0", phase.x0, "Trajectory start x")->capture_default_str();
  c_phase->add_option("--y0", phase.y0, "Trajectory start y")->capture_default_str();
  c_phase->add_option("--t-max", phase.t_max, "Integration horizon")->capture_default_str();
  c_phase->add_option("--dt", phase.dt, "RK4 step")->capture_default_str();
  c_phase->add_option("--svg", phase.svg, "Phase-plane SVG output path");
  c_phase->add_option("--csv", phase.csv, "Trajectory CSV output path (t,x,y)");
  c_phase->add_option("--separatrix-csv", phase.separatrix_csv, "Separatrix CSV output path (x,y)");

  RegionArgs region;
  auto* c_region = app.add_subcommand("region", "Bistable region in (alpha, beta) space");
  add_system(c_region, region.system, false);
  c_region->add_option("--alpha", region.alpha, "Optional query point");
  c_region->add_option("--beta", region.beta, "Optional query point");
  c_region->add_option("--grid", region.grid, "Cells per side of the contour grid")->capture_default_str();
  c_region->add_option("--band", region.band, "Indeterminate band in log units")->capture_default_str();
  c_region->add_option("--csv", region.csv, "Mapped boundary CSV output path (curve,alpha,beta)");
  c_region->add_option("--e1-csv", region.e1_csv, "Phase-space boundary CSV output path (curve,x,y)");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Classification over an (alpha, beta) grid");
  add_system(c_sweep, sweep.system, false);
  c_sweep->add_option("--alpha-grid", sweep.alpha_grid, "lo:hi:n[:log|:lin]")->required();
  c_sweep->add_option("--beta-grid", sweep.beta_grid, "lo:hi:n[:log|:lin]")->required();
  c_sweep->add_option("--out", sweep.out, "CSV output path, - for stdout")->capture_default_str();
  c_sweep->add_option("--svg", sweep.svg, "Region map SVG output path");
  c_sweep->add_flag("--no-curves", sweep.no_curves, "Leave the mapped boundary out of the SVG");
  c_sweep->add_option("--threads", sweep.threads, "Worker threads, 0 for all cores")->capture_default_str();

  SymmetricArgs symmetric;
  auto* c_symmetric = app.add_subcommand("symmetric", "Symmetric Hill system f = g, alpha = beta");
  c_symmetric->add_option("--lambda", symmetric.lambda, "Hill shift");
  c_symmetric->add_option("--a", symmetric.a, "Hill exponent")->required();
  c_symmetric->add_option("--z0", symmetric.z0, "Hill threshold")->capture_default_str();
  c_symmetric->add_option("--lambda-grid", symmetric.lambda_grid, "lo:hi:n[:log|:lin] for a CSV sweep");
  c_symmetric->add_option("--alpha-grid", symmetric.alpha_grid, "lo:hi:n[:log|:lin] for a CSV sweep");
  c_symmetric->add_option("--out", symmetric.out, "CSV output path, - for stdout")->capture_default_str();
  c_symmetric->add_option("--threads", symmetric.threads, "Worker threads, 0 for all cores")->capture_default_str();

  CyclicArgs cyclic;
  auto* c_cyclic = app.add_subcommand("cyclic", "Cyclic n-species system x_i' = f_i(x_{i-1}) - x_i");
  c_cyclic->add_option("--fn", cyclic.functions, "Function spec, repeated in ring order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*c_certify) return cmd_certify(certify, out);
    if (*c_equilibria) return cmd_equilibria(equilibria, out);
    if (*c_phase) return cmd_phase(phase, out);
    if (*c_region) return cmd_region(region, out);
    if (*c_sweep) return cmd_sweep(sweep, out);
    if (*c_symmetric) return cmd_symmetric(symmetric, out);
    if (*c_cyclic) return cmd_cyclic(cyclic, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const StepSizeError& e) {
    err << "consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"bistab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bistab::cli
