#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "repgames/types.hpp"

namespace repgames {

// F(t, x, p, A, l) of the integro-differential equation, with the growth
// exponents k1, k2 and the Lipschitz constant in l declared as metadata.
struct Nonlinearity {
  std::string name;
  std::function<double(double t, const Vec& x, const Vec& p, const Mat& A, double l)> eval;
  double k1 = 0.0;
  double k2 = 0.0;
  double lipschitz_l = 0.0;
  double growth_constant = 1.0;

  double operator()(double t, const Vec& x, const Vec& p, const Mat& A, double l) const {
    return eval(t, x, p, A, l);
  }
  double max_exponent() const;
};

// Registry: zero, linear_nonlocal, advection(b1[, b2]), nonlocal_plus_quadratic,
// and planted_nonmonotone (F = +l, violates ellipticity on purpose).
Nonlinearity make_nonlinearity(const std::string& spec);

struct EllipticityWitness {
  Mat A, B;
  double l = 0.0, m = 0.0;
  Vec p = Vec::Zero();
  double F_A = 0.0, F_B = 0.0;
};

// Random trials with A <= B and l <= m; returns the first violation of
// F(A, l) >= F(B, m), if any.
std::optional<EllipticityWitness> check_ellipticity(const Nonlinearity& F, int dim, int trials, std::uint64_t seed);

// Largest observed |F(t,x,p,A,0)| / (1 + |p|^k1 + |A|^k2) over random samples.
double measure_growth_constant(const Nonlinearity& F, int dim, int trials, std::uint64_t seed);

}  // namespace repgames
