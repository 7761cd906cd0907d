#include "repgames/nonlinearity.hpp"

#include <cmath>
#include <random>

#include "repgames/error.hpp"
#include "repgames/parse.hpp"

namespace repgames {

double Nonlinearity::max_exponent() const { return std::max({1.0, k1, k2}); }

Nonlinearity make_nonlinearity(const std::string& spec) {
  CallSpec c = parse_call(spec);
  Nonlinearity F;
  F.name = spec;
  if (c.name == "zero") {
    F.eval = [](double, const Vec&, const Vec&, const Mat&, double) { return 0.0; };
    F.growth_constant = 0.0;
  } else if (c.name == "linear_nonlocal") {
    F.eval = [](double, const Vec&, const Vec&, const Mat&, double l) { return -l; };
    F.lipschitz_l = 1.0;
    F.growth_constant = 0.0;
  } else if (c.name == "advection") {
    if (c.args.empty() || c.args.size() > 2) throw ConfigError("advection takes one or two components");
    Vec b(c.args[0], c.args.size() > 1 ? c.args[1] : 0.0);
    F.eval = [b](double, const Vec&, const Vec& p, const Mat&, double) { return -b.dot(p); };
    F.k1 = 1.0;
    F.growth_constant = b.norm();
  } else if (c.name == "nonlocal_plus_quadratic") {
    F.eval = [](double, const Vec&, const Vec& p, const Mat&, double l) { return -l + p.squaredNorm(); };
    F.k1 = 2.0;
    F.lipschitz_l = 1.0;
  } else if (c.name == "planted_nonmonotone") {
    F.eval = [](double, const Vec&, const Vec&, const Mat&, double l) { return l; };
    F.lipschitz_l = 1.0;
    F.growth_constant = 0.0;
  } else {
    throw ConfigError("unknown nonlinearity '" + c.name +
                      "'; registry: zero, linear_nonlocal, advection(b), nonlocal_plus_quadratic, planted_nonmonotone");
  }
  if (c.name != "advection" && !c.args.empty()) throw ConfigError(c.name + " takes no arguments");
  return F;
}

namespace {

Mat random_symmetric(std::mt19937_64& rng, int dim, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Mat A = Mat::Zero();
  A(0, 0) = n(rng);
  if (dim == 2) {
    A(1, 1) = n(rng);
    A(0, 1) = A(1, 0) = n(rng);
  }
  return A;
}

Vec random_vec(std::mt19937_64& rng, int dim, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return Vec(n(rng), dim == 2 ? n(rng) : 0.0);
}

}  // namespace

std::optional<EllipticityWitness> check_ellipticity(const Nonlinearity& F, int dim, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < trials; ++k) {
    EllipticityWitness w;
    w.A = random_symmetric(rng, dim, 2.0);
    Vec q = random_vec(rng, dim, 1.0);
    w.B = w.A + q * q.transpose();
    w.l = 4.0 * u(rng) - 2.0;
    w.m = w.l + 2.0 * u(rng);
    w.p = random_vec(rng, dim, 1.0);
    const Vec x = random_vec(rng, dim, 1.0);
    const double t = u(rng);
    w.F_A = F(t, x, w.p, w.A, w.l);
    w.F_B = F(t, x, w.p, w.B, w.m);
    if (w.F_A < w.F_B) return w;
  }
  return std::nullopt;
}

double measure_growth_constant(const Nonlinearity& F, int dim, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const double s = std::pow(10.0, 4.0 * u(rng) - 2.0);
    const Vec p = random_vec(rng, dim, s);
    const Mat A = random_symmetric(rng, dim, s);
    const Vec x = random_vec(rng, dim, 1.0);
    const double val = std::abs(F(u(rng), x, p, A, 0.0));
    const double bound = 1.0 + std::pow(p.norm(), F.k1) + std::pow(A.norm(), F.k2);
    worst = std::max(worst, val / bound);
  }
  return worst;
}

}  // namespace repgames
