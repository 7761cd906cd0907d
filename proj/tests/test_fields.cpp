#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "repgames/error.hpp"
#include "repgames/field.hpp"
#include "repgames/field_io.hpp"
#include "repgames/mollifier.hpp"
#include "repgames/parse.hpp"
#include "repgames/terminal.hpp"

using namespace repgames;

TEST_CASE("interpolation reproduces constants and linear data") {
  const Grid g = Grid::square(-1.0, 1.0, 9);
  const ScalarField five(g, 5.0);
  CHECK(interpolate(five, point(0.13, -0.77)) == doctest::Approx(5.0));
  CHECK(interpolate(five, point(4.0, 4.0)) == doctest::Approx(5.0));

  const Grid line = Grid::line(0.0, 1.0, 5);
  const ScalarField lin = ScalarField::sample(line, [](const Vec& x) { return x[0]; });
  CHECK(interpolate(lin, point(0.25)) == doctest::Approx(0.25));
  CHECK(interpolate(lin, point(0.6)) == doctest::Approx(0.6));
}

TEST_CASE("constant continuation outside the box") {
  const Grid g = Grid::line(0.0, 1.0, 3);
  const ScalarField f(g, std::vector<double>{0.0, 1.0, 0.0});
  CHECK(interpolate(f, point(1.7)) == 0.0);
  CHECK(interpolate(f, point(-3.0)) == 0.0);
  CHECK(interpolate(f, point(0.5)) == 1.0);
}

TEST_CASE("interpolation is exact at nodes and rejects non-finite points") {
  const Grid g = Grid::square(-1.0, 1.0, 7);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  const ScalarField f(g, v);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(interpolate(f, g.node(i)) == v[i]);
  CHECK_THROWS_AS(interpolate(f, point(std::numeric_limits<double>::quiet_NaN(), 0.0)), InputError);
}

TEST_CASE("quadratic test functions") {
  const QuadraticTest zero;
  const Jet j0 = eval_test(zero, point(0.3));
  CHECK(j0.value == 0.0);
  CHECK(j0.grad.isZero());
  CHECK(j0.hess.isZero());

  Mat G = Mat::Zero();
  const auto affine = QuadraticTest::quadratic(Vec::Zero(), 1.0, point(2.0), G);
  const Jet ja = eval_test(affine, point(0.5));
  CHECK(ja.value == doctest::Approx(2.0));
  CHECK(ja.grad[0] == doctest::Approx(2.0));
  CHECK(ja.hess(0, 0) == 0.0);

  G(0, 0) = 2.0;
  const auto sq = QuadraticTest::quadratic(Vec::Zero(), 0.0, Vec::Zero(), G);
  const Jet js = eval_test(sq, point(3.0));
  CHECK(js.value == doctest::Approx(9.0));
  CHECK(js.grad[0] == doctest::Approx(6.0));
  CHECK(js.hess(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("mollified jets agree with finite differences") {
  const Grid g = Grid::square(-1.0, 1.0, 41);
  const ScalarField f = ScalarField::sample(g, [](const Vec& x) { return std::sin(2.0 * x[0]) * std::cos(x[1]); });
  const double w = default_mollify_width(g);
  const Vec x = point(0.21, -0.33);
  const Jet j = mollified_jet(f, x, w);
  const double d = 1e-4;
  for (int a = 0; a < 2; ++a) {
    Vec e = Vec::Zero();
    e[a] = d;
    const double fd = (mollified_value(f, x + e, w) - mollified_value(f, x - e, w)) / (2 * d);
    CHECK(j.grad[a] == doctest::Approx(fd).epsilon(1e-5));
    const Jet jp = mollified_jet(f, x + e, w), jm = mollified_jet(f, x - e, w);
    for (int b = 0; b < 2; ++b) CHECK(j.hess(a, b) == doctest::Approx((jp.grad[b] - jm.grad[b]) / (2 * d)).epsilon(1e-4));
  }
  CHECK(j.value == doctest::Approx(mollified_value(f, x, w)));
}

TEST_CASE("mollified second derivatives stay bounded across cells") {
  const Grid g = Grid::line(-1.0, 1.0, 41);
  const ScalarField f = ScalarField::sample(g, [](const Vec& x) { return std::abs(x[0] - 0.013); });
  const double w = default_mollify_width(g);
  double interior = 0.0, worst_jump = 0.0, prev = 0.0;
  const int n = 2000;
  for (int k = 0; k <= n; ++k) {
    const double s = -0.5 + k * 1.0 / n;
    const double h = mollified_jet(f, point(s), w).hess(0, 0);
    interior = std::max(interior, std::abs(h));
    if (k > 0) worst_jump = std::max(worst_jump, std::abs(h - prev));
    prev = h;
  }
  CHECK(std::isfinite(interior));
  CHECK(worst_jump <= 10.0 * interior);
}

TEST_CASE("field files round trip") {
  const Grid g = Grid::square(-1.0, 2.0, 5);
  const ScalarField f = ScalarField::sample(g, [](const Vec& x) { return x[0] * x[0] - 0.5 * x[1]; });
  const auto dir = std::filesystem::temp_directory_path() / "repgames_field_io";
  std::filesystem::create_directories(dir);
  const std::string stem = (dir / "f").string();
  write_field(f, stem);
  const ScalarField r = read_field(stem);
  CHECK(r.grid() == g);
  CHECK(sup_distance(r, f) <= 1e-12);
  std::filesystem::remove_all(dir);
}

TEST_CASE("call specs and terminal registry") {
  const CallSpec c = parse_call("power(0.5, 1)");
  CHECK(c.name == "power");
  REQUIRE(c.args.size() == 2);
  CHECK(c.args[1] == 1.0);
  CHECK(parse_call("bump").args.empty());
  CHECK_THROWS_AS(parse_call("power(0.5"), ConfigError);

  CHECK(make_terminal("cone(0.5)", 2).f(point(0.3, 0.4)) == doctest::Approx(0.0));
  CHECK(make_terminal("tent(0.2)", 1).f(point(0.5)) == doctest::Approx(-0.3));
  CHECK(make_terminal("gauss(0.4)", 1).f(point(0.0)) == 1.0);
  CHECK(make_terminal("bump(0.5)", 1).f(point(0.6)) == 0.0);
  try {
    make_terminal("wave(1)", 1);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("registry") != std::string::npos);
  }
}
