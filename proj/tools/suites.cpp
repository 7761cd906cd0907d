#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "experiment.hpp"
#include "repgames/curvature.hpp"
#include "repgames/cutoff.hpp"
#include "repgames/eikonal_game.hpp"
#include "repgames/error.hpp"
#include "repgames/icf_game.hpp"
#include "repgames/kernel.hpp"
#include "repgames/levy.hpp"
#include "repgames/nonlinearity.hpp"
#include "repgames/pide_game.hpp"

namespace repgames::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Rng = std::mt19937_64;

ScalarField random_field(const Grid& g, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return ScalarField(g, v);
}

ScalarField pointwise_max(const ScalarField& a, const ScalarField& b) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(a[i], b[i]);
  return ScalarField(a.grid(), v);
}

json to_json(const ScalarField& f) { return f.values(); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Verdict cutoff_suite(std::uint64_t seed) {
  Verdict v{"cutoff", true, "", json()};
  Rng rng(seed);
  std::uniform_real_distribution<double> ue(1e-4, 0.5), ur(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const CutoffParams p{ue(rng), 1.5, 0.5};
    const double r1 = std::pow(10.0, -8.0 + 9.0 * ur(rng)), r2 = r1 * (1.0 + ur(rng));
    const double c1 = cutoff(p, r1), c2 = cutoff(p, r2);
    const bool in_window = c1 >= p.floor_value() && c1 <= p.ceiling_value();
    const bool branch = (r1 < p.floor_value() && c1 == p.floor_value()) ||
                        (r1 > p.ceiling_value() && c1 == p.ceiling_value()) ||
                        (r1 >= p.floor_value() && r1 <= p.ceiling_value() && c1 == r1);
    if (!in_window || !(c1 <= c2) || !branch) {
      v.pass = false;
      v.witness = {{"eps", p.eps}, {"r1", r1}, {"r2", r2}, {"c1", c1}, {"c2", c2}};
      break;
    }
  }
  v.detail = v.pass ? "1000 samples in window, monotone, exact branches" : "cutoff law violated";
  return v;
}

// One round R^eps o R_eps of the eikonal game on a field frozen in time.
std::vector<double> eikonal_round(const ScalarField& U, const SpeedField& speed, double eps) {
  const EikonalConfig ec{eps, 0.0};
  const TimeGrid tg(0.0, 1.0, ec.micro_step());
  const EikonalMoves moves(U.grid(), speed, ec, tg);
  const int K = tg.last();
  const ValueFunction u(tg, U);
  std::vector<double> w(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) w[i] = carol_step(u, K, i, moves).value;
  const ValueFunction wf(tg, ScalarField(U.grid(), w));
  std::vector<double> out(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) out[i] = paul_step(wf, K, i, moves).value;
  return out;
}

std::vector<Verdict> eikonal_suite(std::uint64_t seed) {
  const Grid g = Grid::line(-1.0, 1.0, 21);
  const double eps = 0.4;
  const SpeedField speed = make_speed("two_zone(0.5)");
  SpeedField neg = speed;
  neg.v = [s = speed.v](const Vec& x) { return -s(x); };
  Rng rng(seed);
  Verdict mono{"eikonal_monotone", true, "", json()}, comm{"eikonal_commutes", true, "", json()};
  Verdict dual{"eikonal_duality", true, "", json()}, bounds{"eikonal_bounds", true, "", json()};
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const ScalarField U = random_field(g, rng);
    const ScalarField V = pointwise_max(U, random_field(g, rng));
    const auto su = eikonal_round(U, speed, eps), sv = eikonal_round(V, speed, eps);
    for (std::size_t i = 0; i < su.size() && mono.pass; ++i)
      if (su[i] > sv[i]) mono = {"eikonal_monotone", false, "node " + std::to_string(i), {{"U", to_json(U)}, {"V", to_json(V)}}};
    const double c = uc(rng);
    const auto sc = eikonal_round(U.shifted(c), speed, eps);
    for (std::size_t i = 0; i < su.size() && comm.pass; ++i)
      if (sc[i] != su[i] + c) comm = {"eikonal_commutes", false, "node " + std::to_string(i), {{"U", to_json(U)}, {"c", c}}};
    // R_eps[phi] = -R^eps[-phi] with the speed negated.
    const TimeGrid tg(0.0, 1.0, EikonalConfig{eps, 0.0}.micro_step());
    const EikonalMoves mv(g, speed, EikonalConfig{eps, 0.0}, tg), mn(g, neg, EikonalConfig{eps, 0.0}, tg);
    const ValueFunction phi(tg, U), mphi(tg, U.negated());
    for (std::size_t i = 0; i < g.size() && dual.pass; ++i)
      if (carol_step(phi, tg.last(), i, mv).value != -paul_step(mphi, tg.last(), i, mn).value)
        dual = {"eikonal_duality", false, "node " + std::to_string(i), {{"phi", to_json(U)}}};
  }
  Rng r2(seed + 1);
  for (int k = 0; k < 3 && bounds.pass; ++k) {
    const ScalarField uT = random_field(g, r2);
    const auto sol = solve_eikonal(speed, uT, 1.0, 0.6, EikonalConfig{eps, 0.0});
    if (sol.u.min() < uT.min() || sol.u.max() > uT.max() || sol.w.min() < uT.min() || sol.w.max() > uT.max())
      bounds = {"eikonal_bounds", false, "value escapes [inf u_T, sup u_T]", {{"u_T", to_json(uT)}}};
  }
  for (Verdict* v : {&mono, &comm, &dual, &bounds})
    if (v->detail.empty()) v->detail = "ok";
  return {mono, comm, dual, bounds};
}

std::vector<Verdict> pide_suite(std::uint64_t seed) {
  const Grid g = Grid::line(-1.0, 1.0, 21);
  const Nonlinearity F = make_nonlinearity("linear_nonlocal");
  const LevyMeasure m = LevyMeasure::uniform(1, 0.5);
  PideConfig cfg;
  cfg.eps = 0.1;
  cfg.alpha = 0.5;
  cfg.grid = g;
  cfg.p_levels = 0;
  cfg.gamma_levels = 0;
  Rng rng(seed);
  Verdict mono{"pide_monotone", true, "", json()}, comm{"pide_commutes", true, "", json()};
  double worst = 0.0;
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    auto U = std::make_shared<const ScalarField>(random_field(g, rng));
    auto V = std::make_shared<const ScalarField>(pointwise_max(*U, random_field(g, rng)));
    for (std::size_t i = 0; i < g.size() && mono.pass; ++i) {
      const Vec x = g.node(i);
      auto fam = helen_candidates(U, x, cfg, m.trunc_R());
      const auto fv = helen_candidates(V, x, cfg, m.trunc_R());
      fam.insert(fam.end(), fv.begin(), fv.end());
      const double a = one_step_with(*U, 0.0, x, F, m, cfg, fam).value;
      const double b = one_step_with(*V, 0.0, x, F, m, cfg, fam).value;
      if (a > b) mono = {"pide_monotone", false, "node " + std::to_string(i), {{"U", to_json(*U)}, {"V", to_json(*V)}}};
    }
    const double c = uc(rng);
    const ScalarField s0 = step_field(U, 0.0, F, m, cfg);
    const ScalarField s1 = step_field(std::make_shared<const ScalarField>(U->shifted(c)), 0.0, F, m, cfg);
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(s1[i] - s0[i] - c));
  }
  if (worst > 1e-9) comm = {"pide_commutes", false, "max deviation " + sci(worst), json()};
  else comm.detail = "max deviation " + sci(worst);
  if (mono.detail.empty()) mono.detail = "ok";
  return {mono, comm};
}

std::vector<Verdict> icf_suite(std::uint64_t seed) {
  const Grid g = Grid::line(-1.0, 1.0, 21);
  const Kernel K = Kernel::power(1, 0.5, 1.0);
  IcfConfig cfg;
  cfg.eps = 0.2;
  cfg.kappa.angles = 64;
  cfg.kappa.radial_panels = 8;
  const TimeGrid tg(0.0, 0.2, cfg.micro_step());
  const IcfContext ctx(g, K, cfg, tg);
  Rng rng(seed);
  Verdict dual{"icf_duality", true, "", json()}, mono{"icf_monotone", true, "", json()},
      comm{"icf_commutes", true, "", json()};
  for (int k = 0; k < 20 && dual.pass; ++k) {
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
    const ShapeReference mref = ref.negated();
    for (std::size_t i = 0; i < g.size() && dual.pass; ++i)
      if (carol_step(ctx, ip, ref, 0, i).value != -paul_step(ctx, im, mref, 0, i).value)
        dual = {"icf_duality", false, "node " + std::to_string(i), {{"after", to_json(phi.after())}}};
  }
  const ShapeReference ref = ShapeReference::from_field(random_field(g, rng), default_mollify_width(g));
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const ScalarField U = random_field(g, rng);
    const ScalarField V = pointwise_max(U, random_field(g, rng));
    const auto su = game_step(ctx, U, ref), sv = game_step(ctx, V, ref);
    for (std::size_t i = 0; i < su.size() && mono.pass; ++i)
      if (su[i] > sv[i]) mono = {"icf_monotone", false, "node " + std::to_string(i), {{"U", to_json(U)}, {"V", to_json(V)}}};
    const double c = uc(rng);
    const auto sc = game_step(ctx, U.shifted(c), ref);
    for (std::size_t i = 0; i < su.size() && comm.pass; ++i)
      if (sc[i] != su[i] + c) comm = {"icf_commutes", false, "node " + std::to_string(i), {{"U", to_json(U)}, {"c", c}}};
  }
  for (Verdict* v : {&dual, &mono, &comm})
    if (v->detail.empty()) v->detail = "ok";
  return {dual, mono, comm};
}

std::vector<Verdict> curvature_suite(std::uint64_t seed) {
  const Kernel bump = Kernel::bump(2);
  Verdict plane{"curvature_hyperplane", true, "", json()}, order{"curvature_weak_strict", true, "", json()},
      nested{"curvature_nested", true, "", json()};
  const KappaResult hp = kappa(Vec(0.1, -0.2), [](const Vec& z) { return 0.6 * z[0] - 0.8 * z[1]; }, 0.0, bump);
  plane.pass = std::abs(hp.kappa_star) <= hp.error_bar && hp.error_bar <= 1e-3;
  plane.detail = "kappa* " + sci(hp.kappa_star) + " bar " + sci(hp.error_bar);
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  KappaOptions quick;
  quick.angles = 256;
  quick.radial_panels = 16;
  for (int k = 0; k < 20; ++k) {
    const QuadraticTest q = QuadraticTest::quadratic(Vec(u(rng), u(rng)), u(rng), Vec(u(rng), u(rng)),
                                                     (Mat() << u(rng), u(rng), u(rng), u(rng)).finished());
    const Vec x(0.3 * u(rng), 0.3 * u(rng));
    const KappaResult r = kappa(x, q, bump, quick);
    if (r.kappa_sub > r.kappa_star) {
      order = {"curvature_weak_strict", false, "kappa_* > kappa*", {{"x", {x[0], x[1]}}}};
      break;
    }
    // U2 = U1 + c |z - x|^2 has the larger superlevel set through x.
    const double c = 0.5 + std::abs(u(rng));
    auto U1 = [q](const Vec& z) { return eval_value(q, z); };
    auto U2 = [q, x, c](const Vec& z) { return eval_value(q, z) + c * (z - x).squaredNorm(); };
    const KappaResult a = kappa(x, U1, 4.0, bump, quick), b = kappa(x, U2, 4.0 + 2.0 * c, bump, quick);
    if (a.kappa_star > b.kappa_star + a.error_bar + b.error_bar && nested.pass)
      nested = {"curvature_nested", false, "kappa*[U1] > kappa*[U2] beyond error bars", {{"x", {x[0], x[1]}}, {"c", c}}};
  }
  for (Verdict* v : {&order, &nested})
    if (v->detail.empty()) v->detail = "ok";
  return {plane, order, nested};
}

}  // namespace

std::vector<std::string> known_suites() {
  return {"cutoff", "eikonal_structure", "pide_structure", "icf_structure", "curvature", "ellipticity", "kernel",
          "measure"};
}

std::vector<Verdict> verify(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::vector<std::string> selected = cfg.suites_given ? cfg.suites : known_suites();
  std::vector<Verdict> out;
  auto add = [&](std::vector<Verdict> v) { out.insert(out.end(), v.begin(), v.end()); };
  for (const auto& s : selected) {
    if (s == "cutoff") add({cutoff_suite(cfg.seed)});
    else if (s == "eikonal_structure") add(eikonal_suite(cfg.seed));
    else if (s == "pide_structure") add(pide_suite(cfg.seed));
    else if (s == "icf_structure") add(icf_suite(cfg.seed));
    else if (s == "curvature") add(curvature_suite(cfg.seed));
    else if (s == "ellipticity") {
      const Nonlinearity F = make_nonlinearity(cfg.nonlinearity);
      const auto w = check_ellipticity(F, cfg.dim, 500, cfg.seed);
      Verdict v{"ellipticity", !w.has_value(), "", json()};
      v.detail = w ? F.name + " violates F(A, l) >= F(B, m) for A <= B, l <= m" : F.name + " ok";
      if (w)
        v.witness = {{"A", {w->A(0, 0), w->A(0, 1), w->A(1, 0), w->A(1, 1)}},
                     {"B", {w->B(0, 0), w->B(0, 1), w->B(1, 0), w->B(1, 1)}},
                     {"l", w->l}, {"m", w->m}, {"p", {w->p[0], w->p[1]}}, {"F_A", w->F_A}, {"F_B", w->F_B}};
      out.push_back(v);
    } else if (s == "kernel") {
      const KernelReport r = validate_kernel(Kernel::from_name(cfg.kernel, cfg.dim));
      out.push_back({"kernel", r.valid, r.diagnostic, json()});
    } else if (s == "measure") {
      const MeasureReport r = validate_measure(LevyMeasure::from_name(cfg.measure, cfg.dim));
      out.push_back({"measure", r.valid, r.diagnostic, json()});
    }
  }
  const std::string dir = opts.out_dir.empty() ? cfg.output : opts.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir);
  json verdict = {{"schema", "repgames.verdict/1"}, {"seed", cfg.seed}, {"properties", json::array()}};
  for (const auto& v : out)
    verdict["properties"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}, {"witness", v.witness}});
  std::ofstream(fs::path(dir) / "verdict.json") << verdict.dump(2) << '\n';
  return out;
}

}  // namespace repgames::cli
