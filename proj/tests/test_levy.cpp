#include <doctest.h>

#include <cmath>

#include "repgames/error.hpp"
#include "repgames/levy.hpp"
#include "repgames/nonlinearity.hpp"

using namespace repgames;

TEST_CASE("measure validation") {
  CHECK(validate_measure(LevyMeasure::uniform(1)).valid);
  const auto p = validate_measure(LevyMeasure::power(1, 0.5));
  CHECK(p.valid);
  CHECK(p.second_moment == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  const auto bad = validate_measure(LevyMeasure::power(1, 2.0));
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.diagnostic.empty());
  CHECK(validate_measure(LevyMeasure::power(2, 0.7)).valid);
}

TEST_CASE("inner second moments") {
  CHECK(inner_second_moment(LevyMeasure::uniform(1), 0.5)(0, 0) == doctest::Approx(2.0 * 0.125 / 3.0));
  CHECK(inner_second_moment(LevyMeasure::power(1, 0.5), 1.0)(0, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(inner_second_moment(LevyMeasure::uniform(2), 1e-6).norm() < 1e-20);
  const Mat M = inner_second_moment(LevyMeasure::uniform(2), 1.0);
  CHECK(M(0, 0) == doctest::Approx(M_PI / 4.0));
  CHECK(std::abs(M(0, 1)) < 1e-14);
}

TEST_CASE("nonlocal operator on test functions") {
  const auto m = LevyMeasure::uniform(1);
  const QuadraticTest c = QuadraticTest::quadratic(Vec::Zero(), 3.0, Vec::Zero(), Mat::Zero());
  CHECK(nonlocal_operator(m, c, point(0.2)) == doctest::Approx(0.0));
  const QuadraticTest a = QuadraticTest::quadratic(Vec::Zero(), 1.0, point(2.5), Mat::Zero());
  CHECK(nonlocal_operator(m, a, point(0.2)) == doctest::Approx(0.0));
  Mat G = Mat::Zero();
  G(0, 0) = 1.0;
  const QuadraticTest q = QuadraticTest::quadratic(Vec::Zero(), 0.0, Vec::Zero(), G);
  CHECK(nonlocal_operator(m, q, point(0.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  // Singular density: 1/2 * 2 int_0^1 z^2 z^-1.5 dz.
  CHECK(nonlocal_operator(LevyMeasure::power(1, 0.5), q, point(0.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("measure names") {
  CHECK(LevyMeasure::from_name("uniform(2)", 1).trunc_R() == 2.0);
  CHECK(LevyMeasure::from_name("truncated-power(0.5, 3)", 2).kind() == LevyMeasure::Kind::Power);
  CHECK_THROWS_AS(LevyMeasure::from_name("cauchy", 1), ConfigError);
}

TEST_CASE("nonlinearity registry and ellipticity") {
  for (const char* name : {"zero", "linear_nonlocal", "advection(1, 0)", "nonlocal_plus_quadratic"}) {
    const Nonlinearity F = make_nonlinearity(name);
    CHECK_FALSE(check_ellipticity(F, 2, 300, 5).has_value());
  }
  const auto w = check_ellipticity(make_nonlinearity("planted_nonmonotone"), 1, 300, 5);
  REQUIRE(w.has_value());
  CHECK(w->F_A < w->F_B);
  CHECK(make_nonlinearity("nonlocal_plus_quadratic").max_exponent() == 2.0);
  CHECK_THROWS_AS(make_nonlinearity("unknown"), ConfigError);
}
