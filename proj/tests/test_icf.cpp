#include <doctest.h>

#include <cmath>
#include <random>

#include "repgames/error.hpp"
#include "repgames/icf_game.hpp"

using namespace repgames;

namespace {

IcfConfig light_config(double eps) {
  IcfConfig cfg;
  cfg.eps = eps;
  cfg.kappa.angles = 128;
  cfg.kappa.radial_panels = 8;
  cfg.radius_ratio = 1.25;
  return cfg;
}

}  // namespace

TEST_CASE("half-space sets") {
  const Grid g = Grid::square(-0.5, 0.5, 21);
  const Kernel K = Kernel::power(2, 0.5, 0.3);
  const IcfConfig cfg = light_config(0.1);
  const std::size_t x = g.nearest(point(0.0, 0.0));
  const Vec y = g.node(x);

  SUBCASE("flat test function") {
    Mat G = Mat::Zero();
    G(0, 0) = 1.0;
    const auto bowl = Hypersurface::quadratic(QuadraticTest::quadratic(y, 0.0, Vec::Zero(), G));
    const auto s = halfspace_set(g, x, {y, bowl, Side::Plus}, K, cfg);
    CHECK_FALSE(s.active);
    CHECK(s.nodes == std::vector<std::size_t>{x});
  }
  SUBCASE("hyperplane") {
    const auto plane = Hypersurface::parabola(y, point(1.0, 0.0), 0.0);
    const auto s = halfspace_set(g, x, {y, plane, Side::Plus}, K, cfg);
    CHECK_FALSE(s.active);
    CHECK(s.nodes == std::vector<std::size_t>{x});
  }
  SUBCASE("outside of a ball") {
    // phi = |z - c| - 0.2 through y: its superlevel set is the exterior, kappa* > 0.
    const Vec c = y - point(0.2, 0.0);
    const auto sph = Hypersurface::sphere(c, 0.2, -1);
    const auto s = halfspace_set(g, x, {y, sph, Side::Plus}, K, cfg);
    CHECK(s.active);
    CHECK(s.nodes.size() > 1);
    for (std::size_t i : s.nodes) {
      CHECK((g.node(i) - y).norm() <= K.support() + 1e-12);
      CHECK((g.node(i) - c).norm() >= 0.2 - 1e-12);
    }
    const auto inward = halfspace_set(g, x, {y, sph.negated(), Side::Plus}, K, cfg);
    CHECK_FALSE(inward.active);
  }
  SUBCASE("inadmissible anchor") {
    const auto plane = Hypersurface::parabola(point(-0.1, 0.0), point(1.0, 0.0), 0.0);
    CHECK_THROWS_AS(halfspace_set(g, x, {point(-0.1, 0.0), plane, Side::Plus}, K, cfg), InputError);
  }
}

TEST_CASE("level differences mirror under negation") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const auto s = Hypersurface::sphere(point(u(rng), u(rng)), 0.1 + std::abs(u(rng)), k % 2 ? 1 : -1);
    const Vec z = point(u(rng), u(rng)), y = point(u(rng), u(rng));
    CHECK(level_difference(s.negated(), z, y) == -level_difference(s, z, y));
  }
}

TEST_CASE("constants pass through one round") {
  const Grid g = Grid::square(-0.5, 0.5, 11);
  const IcfConfig cfg = light_config(0.2);
  const TimeGrid tg(0.0, 0.04, cfg.micro_step());
  const IcfContext ctx(g, Kernel::power(2, 0.5, 0.5), cfg, tg);
  const ScalarField c(g, 0.37);
  const auto out = game_step(ctx, c, ShapeReference::from_field(ScalarField::sample(g, [](const Vec& z) { return 0.3 - z.norm(); }), default_mollify_width(g)));
  for (double v : out) CHECK(v == 0.37);
}

TEST_CASE("solver edge cases") {
  const Grid g = Grid::square(-0.5, 0.5, 11);
  const IcfConfig cfg = light_config(0.2);
  const ScalarField uT = ScalarField::sample(g, [](const Vec& z) { return 0.3 - z.norm(); });
  const auto same = solve_icf(Kernel::power(2, 0.5, 0.5), uT, 1.0, 1.0, cfg);
  CHECK(sup_distance(same.u.slice(0), uT) == 0.0);
  const auto flat = solve_icf(Kernel::power(2, 0.5, 0.5), ScalarField(g, -0.2), 1.0, 0.96, cfg);
  CHECK(flat.u.min() == -0.2);
  CHECK(flat.u.max() == -0.2);
  IcfConfig coarse = cfg;
  coarse.eps = 0.05;
  CHECK_THROWS_AS(coarse.validate(g), ConfigError);
}

TEST_CASE("duality, monotonicity and commutation") {
  const Grid g = Grid::square(-0.5, 0.5, 9);
  const IcfConfig cfg = light_config(0.25);
  const TimeGrid tg(0.0, 0.0625, cfg.micro_step());
  const IcfContext ctx(g, Kernel::power(2, 0.5, 0.5), cfg, tg);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random = [&] {
    std::vector<double> v(g.size());
    for (double& a : v) a = u(rng);
    return ScalarField(g, v);
  };
  const ShapeReference ref = ShapeReference::from_field(random(), default_mollify_width(g));
  for (int k = 0; k < 5; ++k) {
    ValueFunction phi(tg, random()), mphi(tg, phi.after().negated());
    for (int s = 0; s < tg.last(); ++s) {
      const ScalarField r = random();
      phi.set_slice(s, r.values());
      mphi.set_slice(s, r.negated().values());
    }
    IndexedValues ip(phi, cfg.block), im(mphi, cfg.block);
    ip.build_all();
    im.build_all();
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(carol_step(ctx, ip, ref, 0, i).value == -paul_step(ctx, im, ref.negated(), 0, i).value);
      CHECK(paul_step(ctx, ip, ref, 0, i).value == -carol_step(ctx, im, ref.negated(), 0, i).value);
    }
    const ScalarField U = random();
    std::vector<double> hi(U.size());
    for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = std::max(U[i], u(rng));
    const auto su = game_step(ctx, U, ref), sv = game_step(ctx, ScalarField(g, hi), ref);
    const auto sc = game_step(ctx, U.shifted(0.75), ref);
    for (std::size_t i = 0; i < su.size(); ++i) {
      CHECK(su[i] <= sv[i]);
      CHECK(sc[i] == su[i] + 0.75);
    }
  }
}

TEST_CASE("curvature table mirrors orientations") {
  const CurvatureTable t(Kernel::power(2, 0.5, 1.0), log_radii(0.1, 1.0, 1.5), {2.0}, KappaOptions{0.0, 8, 128});
  REQUIRE(t.radii().size() >= 5);
  for (std::size_t j = 0; j < t.radii().size(); ++j) {
    CHECK(t.sphere(j, 0).kappa_star < 0.0);
    CHECK(t.sphere(j, 1).kappa_star == -t.sphere(j, 0).kappa_sub);
    CHECK(t.sphere(j, 1).kappa_sub == -t.sphere(j, 0).kappa_star);
  }
  for (std::size_t j = 1; j < t.radii().size(); ++j) CHECK(t.sphere(j, 0).kappa_star > t.sphere(j - 1, 0).kappa_star);
  CHECK(t.max_error_bar() >= 0.0);
}
