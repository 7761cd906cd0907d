#include <doctest.h>

#include <cmath>

#include "repgames/error.hpp"
#include "repgames/oracles.hpp"

using namespace repgames;

TEST_CASE("characteristics for constant speed") {
  const PointFunction cone = [](const Vec& y) { return -std::abs(y[0]); };
  CHECK(eikonal_exact(1.0, cone, 0.3, point(0.5), 1) == doctest::Approx(-0.2).epsilon(1e-6));
  CHECK(eikonal_exact(-1.0, cone, 0.3, point(0.5), 1) == doctest::Approx(-0.8).epsilon(1e-6));
  CHECK(eikonal_exact(1.0, cone, 0.0, point(0.5), 1) == -0.5);
  CHECK(eikonal_exact(0.0, cone, 0.7, point(0.5), 1) == -0.5);
  const PointFunction ring = [](const Vec& y) { return -std::abs(y.norm() - 0.4); };
  CHECK(eikonal_exact(1.0, ring, 0.3, point(0.1, 0.1), 2) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("fine explicit reference for the linear nonlocal equation") {
  const auto m = LevyMeasure::uniform(1);
  const Grid g = Grid::line(-2.0, 2.0, 161);
  const ScalarField c(g, 0.4);
  const ScalarField rc = pide_reference(m, c, 0.1, 0.5 * pide_reference_stable_dt(m, g));
  CHECK(sup_distance(rc, c) <= 1e-13);

  const ScalarField q = ScalarField::sample(g, [](const Vec& z) { return 0.5 * z[0] * z[0]; });
  const double dt = 0.5 * pide_reference_stable_dt(m, g);
  const ScalarField r = pide_reference(m, q, dt, dt);
  const std::size_t i0 = g.nearest(point(0.0));
  CHECK(r[i0] - q[i0] == doctest::Approx(dt / 3.0).epsilon(1e-3));
  CHECK_THROWS_AS(pide_reference(m, q, 0.1, 4.0 * pide_reference_stable_dt(m, g)), ConfigError);
}

TEST_CASE("brute-force curvature") {
  const Kernel K = Kernel::power(2, 0.5, 1.0);
  const PointFunction plane = [](const Vec& z) { return z[0] - 0.1; };
  CHECK(curvature_bruteforce(point(0.1, 0.0), plane, K, 64).value == 0.0);
  const PointFunction ball = [](const Vec& z) { return 0.5 - z.norm(); };
  const auto a = curvature_bruteforce(point(0.5, 0.0), ball, K, 64);
  const auto b = curvature_bruteforce(point(0.5, 0.0), ball, K, 128);
  CHECK(a.value < 0.0);
  CHECK(std::abs(a.value - b.value) <= 1e-3 * std::abs(b.value) + a.error + b.error);
  CHECK_THROWS(curvature_bruteforce(point(0.5, 0.0), ball, K, 8));
}

TEST_CASE("radius curves") {
  const auto still = radius_ode([](double) { return 0.0; }, 0.5, 1.0, 0.4, 40);
  for (double r : still.rho) CHECK(r == 0.5);
  const auto lin = radius_ode([](double) { return -0.8; }, 0.5, 1.0, 0.4, 40);
  CHECK(lin.at(0.6) == doctest::Approx(0.5 - 0.8 * 0.4));
  CHECK(lin.at(0.8) == doctest::Approx(0.5 - 0.8 * 0.2));
  CHECK_THROWS_AS(lin.at(0.2), InputError);
  const auto cut = radius_ode([](double) { return -2.0; }, 0.5, 1.0, 0.4, 40);
  CHECK(cut.truncated);
}

TEST_CASE("radius curve for the singular kernel self-converges") {
  const Kernel K = Kernel::power(2, 0.5, 1.0);
  const auto a = radius_ode(K, 0.5, 1.0, 0.1, 20, 160);
  const auto b = radius_ode(K, 0.5, 1.0, 0.1, 40, 160);
  CHECK(a.at(0.9) < 0.5);
  CHECK(std::abs(a.at(0.9) - b.at(0.9)) <= 0.005 * b.at(0.9));
}
