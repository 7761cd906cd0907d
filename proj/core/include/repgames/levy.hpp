#pragma once

#include <string>

#include "repgames/mollifier.hpp"

namespace repgames {

// Radially symmetric Levy measure nu(dz) = f(|z|) dz restricted to |z| <= trunc_R.
//   uniform:          f(r) = 1
//   power(alpha):     f(r) = r^(-dim-alpha), trunc_R = 1
//   truncated-power:  same density, trunc_R given
class LevyMeasure {
 public:
  enum class Kind { Uniform, Power };

  static LevyMeasure uniform(int dim, double trunc_R = 1.0);
  static LevyMeasure power(int dim, double alpha, double trunc_R = 1.0);

  // Parses "uniform", "uniform(R)", "power(a)", "truncated-power(a, R)".
  static LevyMeasure from_name(const std::string& spec, int dim);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double trunc_R() const { return trunc_R_; }
  std::string name() const;

  double density(double r) const;
  // Integral of r^(dim+1) f(r) over [0, delta]; infinite when it diverges.
  double radial_second_moment(double delta) const;
  // nu({a <= |z| <= b}).
  double mass_between(double a, double b) const;
  double sphere_area() const;

 private:
  LevyMeasure(int dim, Kind kind, double alpha, double trunc_R);
  int dim_;
  Kind kind_;
  double alpha_;
  double trunc_R_;
};

struct MeasureReport {
  bool valid = false;
  double second_moment = 0.0;  // integral of |z|^2 over the unit ball
  double outer_mass = 0.0;     // nu(1 <= |z| <= trunc_R)
  double tail_estimate = 0.0;
  std::string diagnostic;
};

MeasureReport validate_measure(const LevyMeasure& m, double tol = 1e-6);

// M_delta = integral over |z| < delta of z z^T nu(dz).
Mat inner_second_moment(const LevyMeasure& m, double delta);

struct NonlocalOptions {
  double split = 0.0;   // below this radius use 1/2 <D^2 Phi, M_split>; 0 means auto
  double panel = 0.0;   // initial radial panel width; 0 means auto
  double rel_tol = 1e-6;
  int max_refine = 7;
};

// I_R[x, Phi] with symmetric-pair quadrature on the shell split <= |z| <= R.
double nonlocal_operator(const LevyMeasure& m, const QuadraticTest& phi, const Vec& x,
                         const NonlocalOptions& opts = {});

// Split radius used by the games: max(2 mollify width, 2 h).
double default_split(double mollify_width, double h);

}  // namespace repgames
