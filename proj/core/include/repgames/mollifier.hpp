#pragma once

#include <array>
#include <memory>

#include "repgames/field.hpp"

namespace repgames {

struct Jet {
  double value = 0.0;
  Vec grad = Vec::Zero();
  Mat hess = Mat::Zero();
};

// Convolution of the multilinear interpolant with the tensor bump
// rho(s) = 35/32 (1 - s^2)^3 scaled to half-width `width`. Evaluated exactly:
// the integrand is polynomial between grid lines, so 4-point Gauss-Legendre
// per piece is exact.
Jet mollified_jet(const ScalarField& field, const Vec& x, double width);
double mollified_value(const ScalarField& field, const Vec& x, double width);

// Default width used for game candidates: two grid spacings.
double default_mollify_width(const Grid& grid);

// C^2 test function c + p.(z - x0) + 1/2 (z - x0)^T G (z - x0)
// plus base_scale times the mollified base field.
struct QuadraticTest {
  Vec center = Vec::Zero();
  double c = 0.0;
  Vec p = Vec::Zero();
  Mat gamma = Mat::Zero();
  std::shared_ptr<const ScalarField> base;
  double base_scale = 1.0;
  double mollify_width = 0.0;

  static QuadraticTest quadratic(const Vec& center, double c, const Vec& p, const Mat& gamma);
  static QuadraticTest mollified(std::shared_ptr<const ScalarField> base, double width);
};

Jet eval_test(const QuadraticTest& q, const Vec& x);
double eval_value(const QuadraticTest& q, const Vec& x);

}  // namespace repgames
