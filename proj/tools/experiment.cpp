#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "repgames/curvature.hpp"
#include "repgames/cutoff.hpp"
#include "repgames/eikonal_game.hpp"
#include "repgames/error.hpp"
#include "repgames/field_io.hpp"
#include "repgames/icf_game.hpp"
#include "repgames/kernel.hpp"
#include "repgames/levy.hpp"
#include "repgames/oracles.hpp"
#include "repgames/parallel.hpp"
#include "repgames/parse.hpp"
#include "repgames/pide_game.hpp"
#include "repgames/terminal.hpp"

namespace repgames::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const char* kVersion = "0.3.0";

template <typename T>
T take(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

bool in_probe(const ExperimentConfig& cfg, const Vec& x) {
  for (int a = 0; a < cfg.dim; ++a)
    if (x[a] < cfg.probe_lo - 1e-12 || x[a] > cfg.probe_hi + 1e-12) return false;
  return true;
}

double probe_error(const ExperimentConfig& cfg, const ScalarField& a, const ScalarField& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (in_probe(cfg, a.grid().node(i))) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// Zero crossings of the field along grid edges (sign of value >= 0).
std::vector<Vec> zero_crossings(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<Vec> out;
  auto edge = [&](std::size_t i, std::size_t j) {
    const double a = f[i], b = f[j];
    if ((a >= 0.0) == (b >= 0.0)) return;
    const double s = a / (a - b);
    out.push_back(g.node(i) + s * (g.node(j) - g.node(i)));
  };
  for (int iy = 0; iy < g.n(1); ++iy)
    for (int ix = 0; ix < g.n(0); ++ix) {
      const std::size_t i = g.index(ix, iy);
      if (ix + 1 < g.n(0)) edge(i, g.index(ix + 1, iy));
      if (g.dim() == 2 && iy + 1 < g.n(1)) edge(i, g.index(ix, iy + 1));
    }
  return out;
}

double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one = [](const std::vector<Vec>& p, const std::vector<Vec>& q) {
    double m = 0.0;
    for (const Vec& x : p) {
      double d = std::numeric_limits<double>::infinity();
      for (const Vec& y : q) d = std::min(d, (x - y).norm());
      m = std::max(m, d);
    }
    return m;
  };
  return std::max(one(a, b), one(b, a));
}

IcfConfig icf_config(const ExperimentConfig& cfg, double eps) {
  IcfConfig ic;
  ic.eps = eps;
  ic.dt = cfg.dt_over_eps2 * eps * eps;
  const json& f = cfg.family;
  ic.adaptive = take(f, "adaptive", ic.adaptive);
  ic.adaptive_window = take(f, "window", ic.adaptive_window);
  ic.adaptive_tail = take(f, "tail", ic.adaptive_tail);
  ic.directions = take(f, "directions", ic.directions);
  ic.static_radius_stride = take(f, "radius_stride", ic.static_radius_stride);
  ic.parabola_curvatures = take(f, "parabolas", ic.parabola_curvatures);
  ic.radius_min = take(f, "radius_min", ic.radius_min);
  ic.radius_max = take(f, "radius_max", ic.radius_max);
  ic.radius_ratio = take(f, "radius_ratio", ic.radius_ratio);
  ic.kappa.angles = take(f, "kappa_angles", ic.kappa.angles);
  ic.kappa.radial_panels = take(f, "kappa_panels", ic.kappa.radial_panels);
  return ic;
}

PideConfig pide_config(const ExperimentConfig& cfg, double eps, const Grid& grid) {
  PideConfig pc;
  pc.eps = eps;
  pc.alpha = cfg.alpha;
  pc.grid = grid;
  const json& f = cfg.family;
  pc.p_levels = take(f, "p_levels", pc.p_levels);
  pc.p_step = take(f, "p_step", pc.p_step);
  pc.gamma_levels = take(f, "gamma_levels", pc.gamma_levels);
  pc.gamma_step = take(f, "gamma_step", pc.gamma_step);
  pc.pure_quadratics = take(f, "pure_quadratics", pc.pure_quadratics);
  return pc;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
}

std::string out_dir(const ExperimentConfig& cfg, const RunOptions& opts) {
  return opts.out_dir.empty() ? cfg.output : opts.out_dir;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> keys = {
      "game", "dim", "domain", "grid", "terminal", "speed", "nonlinearity", "measure", "alpha", "kernel", "family",
      "schedule", "T", "duration", "dt_over_eps2", "oracle", "probe", "seed", "output", "suites"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");
  ExperimentConfig c;
  c.raw = j;
  c.game = take<std::string>(j, "game", "");
  c.suites_given = j.contains("suites");
  c.suites = take(j, "suites", std::vector<std::string>{});
  for (const auto& s : c.suites) {
    const auto ks = known_suites();
    if (std::find(ks.begin(), ks.end(), s) == ks.end()) throw ConfigError("unknown suite '" + s + "'");
  }
  c.dim = take(j, "dim", 1);
  if (c.dim != 1 && c.dim != 2) throw ConfigError("dim must be 1 or 2");
  const auto dom = take(j, "domain", std::vector<double>{-1.0, 1.0});
  if (dom.size() != 2 || !(dom[0] < dom[1])) throw ConfigError("domain must be [lo, hi] with lo < hi");
  c.lo = dom[0];
  c.hi = dom[1];
  const json g = take(j, "grid", json::object());
  c.n = take(g, "n", 0);
  c.h_over_eps = take(g, "h_over_eps", 0.0);
  if (!c.game.empty() && (c.n > 0) == (c.h_over_eps > 0.0))
    throw ConfigError("grid needs exactly one of n or h_over_eps");
  c.terminal = take<std::string>(j, "terminal", "zero");
  make_terminal(c.terminal, c.dim);
  c.speed = take(j, "speed", c.speed);
  c.nonlinearity = take(j, "nonlinearity", c.nonlinearity);
  c.measure = take(j, "measure", c.measure);
  c.alpha = take(j, "alpha", c.alpha);
  c.kernel = take(j, "kernel", c.kernel);
  c.family = take(j, "family", json::object());
  c.schedule = take(j, "schedule", std::vector<double>{});
  for (std::size_t i = 0; i < c.schedule.size(); ++i) {
    if (!(c.schedule[i] > 0.0 && c.schedule[i] < 1.0)) throw ConfigError("schedule entries must lie in (0, 1)");
    if (i > 0 && !(c.schedule[i] < c.schedule[i - 1])) throw ConfigError("schedule must be strictly decreasing");
  }
  c.T = take(j, "T", c.T);
  c.duration = take(j, "duration", c.duration);
  if (!(c.duration >= 0.0)) throw ConfigError("duration must be >= 0");
  c.dt_over_eps2 = take(j, "dt_over_eps2", c.dt_over_eps2);
  if (!(c.dt_over_eps2 > 0.0 && c.dt_over_eps2 <= 0.25)) throw ConfigError("dt_over_eps2 must lie in (0, 0.25]");
  c.oracle = take(j, "oracle", c.oracle);
  const auto probe = take(j, "probe", std::vector<double>{c.lo, c.hi});
  if (probe.size() != 2 || !(probe[0] <= probe[1])) throw ConfigError("probe must be [lo, hi]");
  c.probe_lo = probe[0];
  c.probe_hi = probe[1];
  c.seed = take(j, "seed", c.seed);
  c.output = take(j, "output", c.output);

  if (c.game == "eikonal") {
    make_speed(c.speed);
  } else if (c.game == "pide") {
    const Nonlinearity F = make_nonlinearity(c.nonlinearity);
    LevyMeasure::from_name(c.measure, c.dim);
    if (!(c.alpha > 0.0 && c.alpha * F.max_exponent() < 1.0))
      throw ConfigError("alpha must satisfy 0 < alpha < 1/max(1, k1, k2)");
  } else if (c.game == "icf") {
    Kernel::from_name(c.kernel, c.dim);
  } else if (!c.game.empty()) {
    throw ConfigError("game must be one of eikonal, pide, icf");
  }
  for (double eps : c.schedule) c.grid_for(eps);
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return from_json(j);
}

Grid ExperimentConfig::grid_for(double eps) const {
  int nodes = n;
  if (nodes <= 0) {
    const double cells = (hi - lo) / (h_over_eps * eps);
    nodes = static_cast<int>(std::lround(cells)) + 1;
    if (std::abs(cells - (nodes - 1)) > 1e-6) throw ConfigError("domain length is not a multiple of h at eps " + fmt(eps));
  }
  if (nodes < 2) throw ConfigError("grid needs at least two nodes per axis");
  return dim == 1 ? Grid::line(lo, hi, nodes) : Grid::square(lo, hi, nodes);
}

void write_rows_csv(const std::vector<Row>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "eps,h,dt,error_sup,error_levelset,runtime_s,flag\n";
  for (const Row& r : rows)
    out << fmt(r.eps) << ',' << fmt(r.h) << ',' << fmt(r.dt) << ',' << fmt(r.error_sup) << ','
        << fmt(r.error_levelset) << ',' << fmt(r.runtime_s) << ',' << r.flag << '\n';
}

std::vector<Row> run(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (cfg.game.empty()) throw ConfigError("run needs a game");
  const std::string dir = out_dir(cfg, opts);
  ensure_dir(dir);
  const TerminalData term = make_terminal(cfg.terminal, cfg.dim);
  const double t_start = cfg.T - cfg.duration;
  std::vector<Row> rows;
  for (double eps : cfg.schedule) {
    Row row;
    row.eps = eps;
    const Grid grid = cfg.grid_for(eps);
    row.h = grid.h(0);
    const ScalarField uT = ScalarField::sample(grid, term.f);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (cfg.game == "eikonal") {
        EikonalConfig ec{eps, cfg.dt_over_eps2 * eps * eps};
        row.dt = ec.micro_step();
        const auto sol = solve_eikonal(make_speed(cfg.speed), uT, cfg.T, t_start, ec);
        const ScalarField u0 = sol.u.slice(0);
        const CallSpec sp = parse_call(cfg.speed);
        if (cfg.oracle && sp.name == "const") {
          const double v = sp.args.at(0);
          const ScalarField ref = ScalarField::sample(
              grid, [&](const Vec& x) { return eikonal_exact(v, term.f, cfg.duration, x, cfg.dim); });
          row.error_sup = probe_error(cfg, u0, ref);
          row.error_levelset = hausdorff(zero_crossings(u0), zero_crossings(ref));
        } else {
          row.error_sup = row.error_levelset = kNaN;
          if (cfg.oracle) row.flag = "no_oracle";
        }
      } else if (cfg.game == "pide") {
        const PideConfig pc = pide_config(cfg, eps, grid);
        row.dt = eps;
        const Nonlinearity F = make_nonlinearity(cfg.nonlinearity);
        const LevyMeasure m = LevyMeasure::from_name(cfg.measure, cfg.dim);
        const auto slices = solve_pide(F, m, uT, cfg.T, t_start, pc);
        const ScalarField& u0 = slices.back();
        if (cfg.oracle && F.name == "linear_nonlocal" && cfg.dim == 1) {
          const double fine = std::min(eps * eps, 0.5 * pide_reference_stable_dt(m, grid));
          const ScalarField ref = pide_reference(m, uT, cfg.duration, fine);
          row.error_sup = probe_error(cfg, u0, ref);
          row.error_levelset = hausdorff(zero_crossings(u0), zero_crossings(ref));
        } else {
          row.error_sup = row.error_levelset = kNaN;
          if (cfg.oracle) row.flag = "no_oracle";
        }
      } else {
        const IcfConfig ic = icf_config(cfg, eps);
        row.dt = ic.micro_step();
        const Kernel K = Kernel::from_name(cfg.kernel, cfg.dim);
        const auto sol = solve_icf(K, uT, cfg.T, t_start, ic);
        const ScalarField u0 = sol.u.slice(0);
        row.error_sup = kNaN;
        const CallSpec tc = parse_call(cfg.terminal);
        if (cfg.oracle && tc.name == "cone" && cfg.dim == 2) {
          const RadiusCurve rc = radius_ode(K, tc.args.at(0), cfg.T, cfg.duration, 200);
          const double rho = rc.at(t_start);
          double e = 0.0;
          const auto pts = zero_crossings(u0);
          for (const Vec& p : pts) e = std::max(e, std::abs(p.norm() - rho));
          row.error_levelset = pts.empty() ? std::numeric_limits<double>::infinity() : e;
          if (rc.truncated) row.flag = "oracle_truncated";
        } else {
          row.error_levelset = kNaN;
          if (cfg.oracle) row.flag = "no_oracle";
        }
      }
    } catch (const NumericalError& e) {
      row.error_sup = row.error_levelset = kNaN;
      row.flag = std::string("numerical_error: ") + e.what();
      for (char& ch : row.flag)
        if (ch == ',' || ch == '\n') ch = ';';
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.runtime_s = opts.timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
    rows.push_back(row);
  }
  write_rows_csv(rows, (fs::path(dir) / "results.csv").string());
  json manifest = {{"schema", "repgames.manifest/1"},
                   {"version", kVersion},
                   {"command", "run"},
                   {"config", cfg.raw},
                   {"seed", cfg.seed},
                   {"threads", thread_count()},
                   {"timing", opts.timing},
                   {"rows", rows.size()},
                   {"files", {"results.csv"}}};
  std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << '\n';
  return rows;
}

std::vector<std::string> dump_oracles(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (cfg.game.empty()) throw ConfigError("oracle needs a game");
  const std::string dir = out_dir(cfg, opts);
  ensure_dir(dir);
  const TerminalData term = make_terminal(cfg.terminal, cfg.dim);
  std::vector<std::string> files;
  int k = 0;
  for (double eps : cfg.schedule) {
    const Grid grid = cfg.grid_for(eps);
    const std::string stem = (fs::path(dir) / ("oracle_" + std::to_string(k++))).string();
    if (cfg.game == "eikonal") {
      const CallSpec sp = parse_call(cfg.speed);
      if (sp.name != "const") throw ConfigError("eikonal oracle needs a constant speed");
      const double v = sp.args.at(0);
      write_field(ScalarField::sample(grid, [&](const Vec& x) { return eikonal_exact(v, term.f, cfg.duration, x, cfg.dim); }),
                  stem);
    } else if (cfg.game == "pide") {
      const LevyMeasure m = LevyMeasure::from_name(cfg.measure, cfg.dim);
      const double fine = std::min(eps * eps, 0.5 * pide_reference_stable_dt(m, grid));
      write_field(pide_reference(m, ScalarField::sample(grid, term.f), cfg.duration, fine), stem);
    } else {
      const CallSpec tc = parse_call(cfg.terminal);
      if (tc.name != "cone" || cfg.dim != 2) throw ConfigError("icf oracle needs 2D cone(rho) terminal data");
      const RadiusCurve rc = radius_ode(Kernel::from_name(cfg.kernel, 2), tc.args.at(0), cfg.T, cfg.duration, 200);
      std::ofstream out(stem + ".csv");
      out << "t,rho\n";
      for (std::size_t i = 0; i < rc.t.size(); ++i) out << fmt(rc.t[i]) << ',' << fmt(rc.rho[i]) << '\n';
    }
    files.push_back(stem + ".csv");
  }
  return files;
}

void merge_tables(const std::vector<std::string>& inputs, const std::string& output) {
  std::string header;
  std::ostringstream body;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + " is empty");
    if (header.empty()) header = line;
    else if (line != header) throw InputError(path + ": header differs from " + inputs.front());
    while (std::getline(in, line))
      if (!line.empty()) body << path << ',' << line << '\n';
  }
  std::ofstream out(output);
  if (!out) throw InputError("cannot write " + output);
  if (!header.empty()) out << "source," << header << '\n' << body.str();
}

}  // namespace repgames::cli
