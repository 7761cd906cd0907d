// Acceptance runs. One line per criterion; exit status 0 when every failure is
// listed with --expect-fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "repgames/curvature.hpp"
#include "repgames/cutoff.hpp"
#include "repgames/eikonal_game.hpp"
#include "repgames/error.hpp"
#include "repgames/icf_game.hpp"
#include "repgames/kernel.hpp"
#include "repgames/oracles.hpp"
#include "repgames/pide_game.hpp"
#include "repgames/terminal.hpp"

using namespace repgames;

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ScalarField random_field(const Grid& g, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return ScalarField(g, v);
}

ScalarField raised(const ScalarField& a, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(a[i], u(rng));
  return ScalarField(a.grid(), v);
}

// ---------------------------------------------------------------- 1

Outcome cutoff_law() {
  Rng rng(1);
  std::uniform_real_distribution<double> ue(1e-4, 0.5), ul(-10.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const CutoffParams p{ue(rng), 1.5, 0.5};
    const double lo = std::pow(p.eps, 1.5), hi = std::pow(p.eps, 0.5);
    double r1 = std::pow(10.0, ul(rng)), r2 = std::pow(10.0, ul(rng));
    if (r1 > r2) std::swap(r1, r2);
    const double c1 = cutoff(p, r1), c2 = cutoff(p, r2);
    const double expect = r1 < lo ? lo : (r1 > hi ? hi : r1);
    if (c1 < lo || c1 > hi || c1 > c2 || std::abs(c1 - expect) > 1e-15 * expect) {
      std::ostringstream s;
      s << "eps=" << p.eps << " r=" << r1 << " cutoff=" << c1;
      return {false, s.str()};
    }
  }
  return {true, "1000 samples: in window, monotone, exact branches"};
}

// ---------------------------------------------------------------- 2

std::vector<double> eikonal_round(const ScalarField& U, const SpeedField& v, double eps) {
  const EikonalConfig ec{eps, 0.0};
  const TimeGrid tg(0.0, 1.0, ec.micro_step());
  const EikonalMoves moves(U.grid(), v, ec, tg);
  const ValueFunction u(tg, U);
  std::vector<double> w(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) w[i] = carol_step(u, tg.last(), i, moves).value;
  const ValueFunction wf(tg, ScalarField(U.grid(), w));
  std::vector<double> out(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) out[i] = paul_step(wf, tg.last(), i, moves).value;
  return out;
}

Outcome scheme_structure() {
  const Grid g = Grid::line(-1.0, 1.0, 21);
  Rng rng(2);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  int mono_fail = 0, comm_fail = 0;
  double pide_comm = 0.0;

  const SpeedField v = make_speed("two_zone(0.5)");
  for (int k = 0; k < 50; ++k) {
    const ScalarField U = random_field(g, rng), V = raised(U, rng);
    const double c = uc(rng);
    const auto su = eikonal_round(U, v, 0.4), sv = eikonal_round(V, v, 0.4), sc = eikonal_round(U.shifted(c), v, 0.4);
    for (std::size_t i = 0; i < g.size(); ++i) {
      mono_fail += su[i] > sv[i];
      comm_fail += sc[i] != su[i] + c;
    }
  }

  const Nonlinearity F = make_nonlinearity("linear_nonlocal");
  const LevyMeasure m = LevyMeasure::uniform(1, 0.5);
  PideConfig pc;
  pc.eps = 0.1;
  pc.alpha = 0.5;
  pc.grid = g;
  pc.p_levels = 0;
  pc.gamma_levels = 0;
  for (int k = 0; k < 50; ++k) {
    auto U = std::make_shared<const ScalarField>(random_field(g, rng));
    auto V = std::make_shared<const ScalarField>(raised(*U, rng));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec x = g.node(i);
      auto fam = helen_candidates(U, x, pc, m.trunc_R());
      const auto fv = helen_candidates(V, x, pc, m.trunc_R());
      fam.insert(fam.end(), fv.begin(), fv.end());
      mono_fail += one_step_with(*U, 0.0, x, F, m, pc, fam).value > one_step_with(*V, 0.0, x, F, m, pc, fam).value;
    }
    const double c = uc(rng);
    const ScalarField s0 = step_field(U, 0.0, F, m, pc);
    const ScalarField s1 = step_field(std::make_shared<const ScalarField>(U->shifted(c)), 0.0, F, m, pc);
    for (std::size_t i = 0; i < g.size(); ++i) pide_comm = std::max(pide_comm, std::abs(s1[i] - s0[i] - c));
  }
  comm_fail += pide_comm > 1e-9;

  IcfConfig ic;
  ic.eps = 0.2;
  ic.kappa.angles = 64;
  ic.kappa.radial_panels = 8;
  const TimeGrid tg(0.0, 0.2, ic.micro_step());
  const IcfContext ctx(g, Kernel::power(1, 0.5, 1.0), ic, tg);
  const ShapeReference ref = ShapeReference::from_field(random_field(g, rng), default_mollify_width(g));
  for (int k = 0; k < 50; ++k) {
    const ScalarField U = random_field(g, rng), V = raised(U, rng);
    const double c = uc(rng);
    const auto su = game_step(ctx, U, ref), sv = game_step(ctx, V, ref), sc = game_step(ctx, U.shifted(c), ref);
    for (std::size_t i = 0; i < g.size(); ++i) {
      mono_fail += su[i] > sv[i];
      comm_fail += sc[i] != su[i] + c;
    }
  }
  std::ostringstream s;
  s << "3 games x 50 pairs: monotonicity violations " << mono_fail << ", commutation violations " << comm_fail
    << " (nonlocal game deviation " << fmt("%.1e", pide_comm) << ")";
  return {mono_fail == 0 && comm_fail == 0, s.str()};
}

// ---------------------------------------------------------------- 3, 4

struct EikonalRun {
  double eps;
  ScalarField u_T;
  EikonalSolution sol;
};

std::vector<EikonalRun>& eikonal_runs() {
  static std::vector<EikonalRun> runs = [] {
    std::vector<EikonalRun> out;
    const auto tent = make_terminal("tent(0.2)", 1);
    for (double eps : {0.1, 0.05, 0.025}) {
      const int n = static_cast<int>(std::lround(2.0 / (0.25 * eps))) + 1;
      const Grid g = Grid::line(-1.0, 1.0, n);
      ScalarField uT = ScalarField::sample(g, tent.f);
      auto sol = solve_eikonal(make_speed("const(1)"), uT, 1.0, 0.5, EikonalConfig{eps, 0.0});
      out.push_back({eps, std::move(uT), std::move(sol)});
    }
    return out;
  }();
  return runs;
}

Outcome eikonal_convergence() {
  const auto tent = make_terminal("tent(0.2)", 1);
  std::vector<double> err;
  double C = 0.0;
  for (const auto& r : eikonal_runs()) {
    const ScalarField u0 = r.sol.u.slice(0);
    const Grid& g = u0.grid();
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      e = std::max(e, std::abs(u0[i] - eikonal_exact(1.0, tent.f, 0.5, g.node(i), 1)));
    err.push_back(e);
    const TimeGrid& tg = r.sol.u.time_grid();
    for (int s = 0; s <= tg.last(); ++s) {
      const double scale = tg.T() - tg.time(s) + std::sqrt(r.eps);
      C = std::max(C, sup_distance(r.sol.u.slice(s), r.u_T) / scale);
    }
  }
  const bool decreasing = err[1] < err[0] && err[2] < err[1];
  const bool ratio = err[2] <= 0.6 * err[0];
  const bool layer = C <= 1.0;
  std::ostringstream s;
  s << "sup-error " << fmt("%.3e", err[0]) << ", " << fmt("%.3e", err[1]) << ", " << fmt("%.3e", err[2])
    << (decreasing ? " strictly decreasing" : " not strictly decreasing") << "; ratio " << (ratio ? "ok" : "fails")
    << "; terminal layer C=" << fmt("%.3f", C) << (layer ? " <= sup|v|" : " > sup|v|");
  return {decreasing && ratio && layer, s.str()};
}

Outcome eikonal_duality_bounds() {
  Rng rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid g = Grid::line(-1.0, 1.0, 41);
  const EikonalConfig cfg{0.2, 0.0};
  const TimeGrid tg(0.0, 0.2, cfg.micro_step());
  int fails = 0;
  for (int k = 0; k < 50; ++k) {
    auto vals = std::make_shared<ScalarField>(random_field(g, rng));
    SpeedField v{"random", [vals](const Vec& x) { return interpolate(*vals, x); }, 0.0};
    SpeedField mv{"negated", [vals](const Vec& x) { return -interpolate(*vals, x); }, 0.0};
    const EikonalMoves moves(g, v, cfg, tg), mirrored(g, mv, cfg, tg);
    ValueFunction phi(tg, random_field(g, rng)), mphi(tg, phi.after().negated());
    for (int s = 0; s < tg.last(); ++s) {
      const ScalarField r = random_field(g, rng);
      phi.set_slice(s, r.values());
      mphi.set_slice(s, r.negated().values());
    }
    const int slot = static_cast<int>(u(rng) * 0.5 * tg.last() + 0.5 * tg.last());
    for (std::size_t i = 0; i < g.size(); ++i)
      fails += carol_step(phi, slot, i, moves).value != -paul_step(mphi, slot, i, mirrored).value;
  }
  int escapes = 0;
  for (const auto& r : eikonal_runs())
    for (const ValueFunction* f : {&r.sol.u, &r.sol.w})
      for (int s = 0; s <= f->time_grid().last(); ++s) {
        const ScalarField sl = f->slice(s);
        escapes += sl.min() < r.u_T.min() || sl.max() > r.u_T.max();
      }
  std::ostringstream s;
  s << "duality mismatches " << fails << " on 50 random inputs; slots outside [inf u_T, sup u_T]: " << escapes;
  return {fails == 0 && escapes == 0, s.str()};
}

// ---------------------------------------------------------------- 5, 6, 7

Outcome pide_consistency() {
  const auto F = make_nonlinearity("linear_nonlocal");
  const auto m = LevyMeasure::uniform(1);
  Mat G = Mat::Zero();
  G(0, 0) = 1.0;
  const auto psi = QuadraticTest::quadratic(point(0.1), 0.3, point(0.5), G);
  const auto r = consistency_residual(F, m, psi, 0.5, point(0.1), {0.16, 0.08, 0.04}, PideConfig{});
  const bool dec = r[1].residual < r[0].residual && r[2].residual < r[1].residual;
  const bool half = r[2].residual <= 0.5 * r[0].residual;
  bool lower = true;
  for (const auto& p : r) lower = lower && p.scheme >= p.lower;
  std::ostringstream s;
  s << "residual/eps " << fmt("%.2e", r[0].residual) << ", " << fmt("%.2e", r[1].residual) << ", "
    << fmt("%.2e", r[2].residual) << "; one-sided bound " << (lower ? "holds" : "fails");
  return {dec && half && lower, s.str()};
}

Outcome pide_oracle() {
  const double eps = 0.05, L = 2.0;
  const int n = static_cast<int>(std::lround(2.0 * L / (0.25 * eps))) + 1;
  const Grid g = Grid::line(-L, L, n);
  const ScalarField uT = ScalarField::sample(g, make_terminal("gauss(0.4)", 1).f);
  const auto F = make_nonlinearity("linear_nonlocal");
  const auto m = LevyMeasure::uniform(1);
  PideConfig cfg;
  cfg.eps = eps;
  cfg.alpha = 0.8;
  cfg.grid = g;
  const auto slices = solve_pide(F, m, uT, 1.0, 0.8, cfg);
  const double fine = std::min(0.0025, 0.5 * pide_reference_stable_dt(m, g));
  const ScalarField ref = pide_reference(m, uT, 0.2, fine);
  const double err = sup_distance(slices.back(), ref), change = sup_distance(ref, uT);
  std::ostringstream s;
  s << "sup-error " << fmt("%.4f", err) << " vs oracle change " << fmt("%.4f", change) << " ("
    << fmt("%.1f", 100.0 * err / change) << "%, limit 5%)";
  return {err <= 0.05 * change, s.str()};
}

Outcome score_bound() {
  const auto m = LevyMeasure::uniform(1);
  bool ok = true;
  std::ostringstream s;
  for (const char* name : {"linear_nonlocal", "nonlocal_plus_quadratic"}) {
    const auto F = make_nonlinearity(name);
    const double alpha = 0.4 / F.max_exponent();
    std::vector<double> C;
    double gamma = 0.0;
    for (double eps : {0.1, 0.05, 0.025}) {
      const auto r = score_bound_check(F, m, alpha, {eps}, 100, 7);
      C.push_back(r.constant);
      gamma = r.gamma;
    }
    const double Cmax = *std::max_element(C.begin(), C.end());
    const bool stable = std::isfinite(Cmax) && C[2] <= 1.1 * C[0] + 1e-15;
    ok = ok && stable;
    if (s.tellp() > 0) s << "; ";
    s << name << ": gamma=" << fmt("%.2f", gamma) << " C=" << fmt("%.3f", C[0]) << "/" << fmt("%.3f", C[1]) << "/"
      << fmt("%.3f", C[2]);
  }
  return {ok, s.str()};
}

// ---------------------------------------------------------------- 8

Outcome curvature_checks() {
  const Kernel bump = Kernel::bump(2);
  const Kernel power = Kernel::power(2, 0.5, 1.0);
  std::ostringstream s;
  bool ok = true;

  const LevelFunction plane = [](const Vec& z) { return 0.6 * z[0] + 0.8 * z[1] - 0.05; };
  const auto hp = kappa(point(0.03, 0.04), plane, 0.0, bump);
  const bool plane_ok = std::abs(hp.kappa_star) <= hp.error_bar && hp.error_bar <= 1e-3;
  ok = ok && plane_ok;
  s << "hyperplane " << fmt("%.1e", hp.kappa_star) << " bar " << fmt("%.1e", hp.error_bar) << "; ";

  Rng rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_smooth = [&]() {
    const double a = u(rng), b = u(rng), c = u(rng), d = 2.0 * u(rng), e = 2.0 * u(rng), f = 2.0 * u(rng);
    return QuadraticTest::quadratic(Vec::Zero(), c, point(a, b), (Mat() << d, e, e, f).finished());
  };
  int order_fail = 0;
  for (int k = 0; k < 200; ++k) {
    const auto q = random_smooth();
    const Vec x = point(0.3 * u(rng), 0.3 * u(rng));
    const auto r = kappa(x, q, k % 2 ? bump : power, KappaOptions{0.0, 16, 256});
    order_fail += r.kappa_sub > r.kappa_star;
  }
  ok = ok && order_fail == 0;
  s << "sub>star on " << order_fail << "/200; ";

  int nest_fail = 0;
  for (int k = 0; k < 100; ++k) {
    QuadraticTest U = random_smooth();
    const Vec x = point(0.3 * u(rng), 0.3 * u(rng));
    U.center = x;
    if (eval_test(U, x).grad.norm() < 0.2) U.p += point(0.5, 0.0);
    // V = U + a |z - x|^2 with a > 0 agrees at x and dominates elsewhere.
    QuadraticTest V = U;
    V.gamma += 2.0 * (0.2 + std::abs(u(rng))) * Mat::Identity();
    const Kernel& K = k % 2 ? bump : power;
    const auto ru = kappa(x, U, K, KappaOptions{0.0, 16, 256}), rv = kappa(x, V, K, KappaOptions{0.0, 16, 256});
    nest_fail += ru.kappa_star > rv.kappa_star + ru.error_bar + rv.error_bar;
  }
  ok = ok && nest_fail == 0;
  s << "nesting violations " << nest_fail << "/100; balls";

  for (const Kernel* K : {&bump, &power}) {
    for (double rho : {0.3, 0.5, 0.7}) {
      const LevelFunction ball = [rho](const Vec& z) { return rho - z.norm(); };
      KappaOptions opts;
      opts.near_curvature = 1.0 / rho;
      const auto r = kappa(point(rho, 0.0), ball, 1.0 / rho, *K, opts);
      const auto bf = curvature_bruteforce(point(rho, 0.0), ball, *K, 400);
      const double gap = std::abs(r.kappa_star - bf.value), bar = 2.0 * (r.error_bar + bf.error);
      ok = ok && gap <= bar;
      s << " " << fmt("%.4f", r.kappa_star) << (gap <= bar ? "~" : "!=") << fmt("%.4f", bf.value);
    }
  }
  return {ok, s.str()};
}

// ---------------------------------------------------------------- 9, 10

struct CircleRun {
  std::unique_ptr<IcfContext> ctx;
  IcfSolution circle;
  IcfSolution affine;
  double rho_ode;
};

constexpr double kIcfEps = 0.05;
constexpr double kIcfT = 1.0;
constexpr double kIcfDuration = 0.1;

CircleRun& circle_run() {
  static CircleRun run = [] {
    const Grid g = Grid::square(-0.625, 0.625, 101);
    const Kernel K = Kernel::power(2, 0.5, 1.0);
    IcfConfig cfg;
    cfg.eps = kIcfEps;
    cfg.directions = 0;
    cfg.parabola_curvatures = {};
    cfg.kappa.angles = 256;
    cfg.kappa.radial_panels = 16;
    cfg.validate(g);
    const TimeGrid tg(kIcfT - kIcfDuration, kIcfT, cfg.micro_step());
    auto ctx = std::make_unique<IcfContext>(g, K, cfg, tg);
    const ScalarField cone = ScalarField::sample(g, make_terminal("cone(0.5)", 2).f);
    // Axis-aligned, so that constant continuation beyond the box keeps every level set a line.
    const ScalarField affine = ScalarField::sample(g, make_terminal("affine(1, 0, -0.1)", 2).f);
    IcfSolution circle = solve_icf(*ctx, cone);
    IcfSolution flat = solve_icf(*ctx, affine);
    const double rho = radius_ode(K, 0.5, kIcfT, kIcfDuration, 40).at(kIcfT - kIcfDuration);
    return CircleRun{std::move(ctx), std::move(circle), std::move(flat), rho};
  }();
  return run;
}

// Zero crossing of the interpolated field along the ray from the origin in direction d.
double ray_radius(const ScalarField& f, const Vec& d, double r_max) {
  const int n = 2000;
  double prev = interpolate(f, Vec::Zero());
  for (int k = 1; k <= n; ++k) {
    const double r = r_max * k / n;
    const double v = interpolate(f, r * d);
    if (prev >= 0.0 && v < 0.0) {
      const double r0 = r_max * (k - 1) / n;
      return r0 + (r - r0) * prev / (prev - v);
    }
    prev = v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Outcome icf_circle() {
  CircleRun& run = circle_run();
  const ScalarField u0 = run.circle.u.slice(0);
  double sum = 0.0, lo = 1e300, hi = -1e300;
  const int rays = 360;
  for (int k = 0; k < rays; ++k) {
    const double a = 2.0 * M_PI * k / rays;
    const double r = ray_radius(u0, point(std::cos(a), std::sin(a)), 0.6);
    sum += r;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double mean = sum / rays;
  const double rel = std::abs(mean - run.rho_ode) / run.rho_ode;

  // Affine data: the zero line a.x + b = 0 must stay put.
  const Grid& g = u0.grid();
  const ScalarField a0 = run.affine.u.slice(0);
  const Vec n = point(1.0, 0.0);
  const Vec t = point(0.0, 1.0);
  const double offset = 0.1;
  double drift = 0.0;
  for (int k = -20; k <= 20; ++k) {
    const Vec base = offset * n + 0.02 * k * t;
    if (std::abs(base[0]) > 0.45 || std::abs(base[1]) > 0.45) continue;
    double s0 = -0.15, s1 = 0.15, v0 = interpolate(a0, base + s0 * n), v1 = interpolate(a0, base + s1 * n);
    if (!(v0 < 0.0 && v1 > 0.0)) {
      drift = std::numeric_limits<double>::infinity();
      break;
    }
    for (int it = 0; it < 60; ++it) {
      const double sm = 0.5 * (s0 + s1);
      (interpolate(a0, base + sm * n) < 0.0 ? s0 : s1) = sm;
    }
    drift = std::max(drift, std::abs(0.5 * (s0 + s1)));
  }
  const double h = g.h(0);
  std::ostringstream s;
  s << "mean radius " << fmt("%.4f", mean) << " (rays " << fmt("%.4f", lo) << ".." << fmt("%.4f", hi) << ") vs ODE "
    << fmt("%.4f", run.rho_ode) << ", " << fmt("%.1f", 100.0 * rel) << "% (limit 10%); affine drift "
    << fmt("%.4f", drift) << " (limit 2h=" << fmt("%.4f", 2.0 * h) << ")";
  return {rel <= 0.10 && drift <= 2.0 * h, s.str()};
}

Outcome icf_structure() {
  const Grid g = Grid::square(-0.5, 0.5, 9);
  IcfConfig cfg;
  cfg.eps = 0.25;
  cfg.kappa.angles = 128;
  cfg.kappa.radial_panels = 8;
  const TimeGrid tg(0.0, 0.0625, cfg.micro_step());
  const IcfContext ctx(g, Kernel::power(2, 0.5, 0.5), cfg, tg);
  Rng rng(10);
  int dual_fail = 0, mono_fail = 0, comm_fail = 0;
  for (int k = 0; k < 20; ++k) {
    ValueFunction phi(tg, random_field(g, rng)), mphi(tg, phi.after().negated());
    for (int s = 0; s < tg.last(); ++s) {
      const ScalarField r = random_field(g, rng);
      phi.set_slice(s, r.values());
      mphi.set_slice(s, r.negated().values());
    }
    IndexedValues ip(phi, cfg.block), im(mphi, cfg.block);
    ip.build_all();
    im.build_all();
    const ShapeReference ref = ShapeReference::from_field(random_field(g, rng), default_mollify_width(g));
    for (std::size_t i = 0; i < g.size(); ++i)
      dual_fail += carol_step(ctx, ip, ref, 0, i).value != -paul_step(ctx, im, ref.negated(), 0, i).value;
  }
  const ShapeReference ref = ShapeReference::from_field(random_field(g, rng), default_mollify_width(g));
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const ScalarField U = random_field(g, rng), V = raised(U, rng);
    const double c = uc(rng);
    const auto su = game_step(ctx, U, ref), sv = game_step(ctx, V, ref), sc = game_step(ctx, U.shifted(c), ref);
    for (std::size_t i = 0; i < g.size(); ++i) {
      mono_fail += su[i] > sv[i];
      comm_fail += sc[i] != su[i] + c;
    }
  }

  // Plays are logged on a small solve. On a shrinking cone Paul mostly stays, so the
  // expanding cone and a tilted plane are played as well.
  const Grid pg = Grid::square(-0.25, 0.25, 41);
  IcfConfig pc;
  pc.eps = 0.05;
  pc.directions = 0;
  pc.parabola_curvatures = {};
  pc.kappa.angles = 128;
  pc.kappa.radial_panels = 8;
  const IcfContext pctx(pg, Kernel::power(2, 0.5, 1.0), pc, TimeGrid(0.0, 0.02, pc.micro_step()));
  const ScalarField cone = ScalarField::sample(pg, make_terminal("cone(0.15)", 2).f);
  const ScalarField tilted = ScalarField::sample(pg, make_terminal("affine(1, 0.5, -0.02)", 2).f);
  int plays = 0, active = 0, chain_fail = 0;
  for (const ScalarField* data : {&cone, &tilted}) {
    for (const ScalarField& uT : {*data, data->negated()}) {
      const IcfSolution sol = solve_icf(pctx, uT);
      for (double r : {0.05, 0.1, 0.15}) {
        for (int k = 0; k < 8; ++k) {
          const double a = 2.0 * M_PI * k / 8 + 0.1;
          const std::size_t x = pg.nearest(point(r * std::cos(a), r * std::sin(a)));
          for (const IcfPlay& p : trace_icf_play(pctx, sol, 0, x)) {
            ++plays;
            if (!p.paul.active) continue;
            ++active;
            const Vec xp = pg.node(p.paul.anchor), xc = pg.node(p.paul.reached);
            chain_fail += level_difference(p.paul.phi, pg.node(p.x), xp) > 0.0;
            chain_fail += level_difference(p.paul.phi, xc, xp) < 0.0;
          }
        }
      }
    }
  }
  std::ostringstream s;
  s << "duality mismatches " << dual_fail << "; monotonicity " << mono_fail << "; commutation " << comm_fail
    << "; score chain violations " << chain_fail << " on " << active << " active of " << plays << " plays";
  return {dual_fail == 0 && mono_fail == 0 && comm_fail == 0 && chain_fail == 0 && active > 0, s.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected, only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expected.insert(std::stoi(argv[++i]));
    } else if (a == "--only" && i + 1 < argc) {
      only.insert(std::stoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]... [--expect-fail N]...\n");
      return 2;
    }
  }
  const std::vector<Criterion> all = {
      {1, "cutoff law", 1, cutoff_law},
      {2, "scheme structure", 30, scheme_structure},
      {3, "eikonal convergence", 120, eikonal_convergence},
      {4, "eikonal duality and bounds", 30, eikonal_duality_bounds},
      {5, "nonlocal consistency", 120, pide_consistency},
      {6, "nonlocal game vs oracle", 180, pide_oracle},
      {7, "score bound", 60, score_bound},
      {8, "curvature correctness", 180, curvature_checks},
      {9, "shrinking circle", 600, icf_circle},
      {10, "curvature game structure", 120, icf_structure},
  };
  int unexpected = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool is_expected = expected.count(c.id) > 0;
    const char* tag = o.pass ? (is_expected ? "PASS (expected fail)" : "PASS") : (is_expected ? "FAIL (expected)" : "FAIL");
    if (o.pass == is_expected) ++unexpected;
    std::printf("%-20s [%2d] %s: %s [%.1f s, budget %.0f s]\n", tag, c.id, c.name, o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
