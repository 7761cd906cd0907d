#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "repgames/curvature.hpp"
#include "repgames/eikonal_game.hpp"
#include "repgames/icf_game.hpp"
#include "repgames/levy.hpp"
#include "repgames/mollifier.hpp"
#include "repgames/pide_game.hpp"

using namespace repgames;

static void BM_MollifiedJet(benchmark::State& state) {
  const Grid g = Grid::square(-1.0, 1.0, 101);
  const ScalarField f = ScalarField::sample(g, [](const Vec& x) { return std::sin(3 * x[0]) * x[1]; });
  const double w = default_mollify_width(g);
  double x = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mollified_jet(f, point(x, 0.3), w));
    x = x > 0.5 ? -0.5 : x + 1e-3;
  }
}
BENCHMARK(BM_MollifiedJet);

static void BM_NonlocalOperator(benchmark::State& state) {
  const auto m = LevyMeasure::power(1, 0.5);
  Mat G = Mat::Zero();
  G(0, 0) = 1.0;
  const auto q = QuadraticTest::quadratic(Vec::Zero(), 0.0, point(0.3), G);
  for (auto _ : state) benchmark::DoNotOptimize(nonlocal_operator(m, q, point(0.1)));
}
BENCHMARK(BM_NonlocalOperator);

static void BM_Kappa(benchmark::State& state) {
  const Kernel K = Kernel::power(2, 0.5, 1.0);
  const LevelFunction ball = [](const Vec& z) { return 0.5 - z.norm(); };
  KappaOptions opts;
  opts.angles = static_cast<int>(state.range(0));
  opts.near_curvature = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(kappa(point(0.5, 0.0), ball, 2.0, K, opts));
}
BENCHMARK(BM_Kappa)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_EikonalSolve(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const int n = static_cast<int>(std::lround(8.0 / eps)) + 1;
  const Grid g = Grid::line(-1.0, 1.0, n);
  const ScalarField uT = ScalarField::sample(g, [](const Vec& x) { return -std::max(0.0, std::abs(x[0]) - 0.2); });
  for (auto _ : state) benchmark::DoNotOptimize(solve_eikonal(make_speed("two_zone(0.5)"), uT, 1.0, 0.5, EikonalConfig{eps, 0.0}));
}
BENCHMARK(BM_EikonalSolve)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_PideStep(benchmark::State& state) {
  const Grid g = Grid::line(-2.0, 2.0, 321);
  auto U = std::make_shared<const ScalarField>(ScalarField::sample(g, [](const Vec& x) { return std::exp(-x[0] * x[0] / 0.32); }));
  const auto F = make_nonlinearity("linear_nonlocal");
  const auto m = LevyMeasure::uniform(1);
  PideConfig cfg;
  cfg.eps = 0.05;
  cfg.alpha = 0.8;
  cfg.grid = g;
  for (auto _ : state) benchmark::DoNotOptimize(step_field(U, 0.0, F, m, cfg));
}
BENCHMARK(BM_PideStep)->Unit(benchmark::kMillisecond);

static void BM_IcfGameStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = Grid::square(-0.5, 0.5, n);
  IcfConfig cfg;
  cfg.eps = 4.0 * g.h(0);
  cfg.directions = 0;
  cfg.parabola_curvatures = {};
  cfg.kappa.angles = 128;
  cfg.kappa.radial_panels = 8;
  const TimeGrid tg(0.0, 4.0 * cfg.micro_step(), cfg.micro_step());
  const IcfContext ctx(g, Kernel::power(2, 0.5, 1.0), cfg, tg);
  const ScalarField f = ScalarField::sample(g, [](const Vec& x) { return 0.3 - x.norm(); });
  const ShapeReference ref = ShapeReference::from_field(f, default_mollify_width(g));
  for (auto _ : state) benchmark::DoNotOptimize(game_step(ctx, f, ref));
}
BENCHMARK(BM_IcfGameStep)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
