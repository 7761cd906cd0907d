#pragma once

#include <functional>
#include <string>
#include <vector>

#include "repgames/field.hpp"
#include "repgames/kernel.hpp"
#include "repgames/levy.hpp"

namespace repgames {

using PointFunction = std::function<double(const Vec&)>;

// Constant-speed eikonal solution by characteristics: the max (v > 0) or min
// (v < 0) of u_T over the closed ball of radius |v| * duration around x.
double eikonal_exact(double v, const PointFunction& u_T, double duration, const Vec& x, int dim);

// Explicit Euler for d_s w = I[w] on the nodes of u_T's 1D grid, with the
// nonlocal term integrated against tent functions of the lattice.
// Throws ConfigError when fine_dt violates the stability limit.
ScalarField pide_reference(const LevyMeasure& m, const ScalarField& u_T, double duration, double fine_dt);

// Largest stable step of pide_reference on this grid.
double pide_reference_stable_dt(const LevyMeasure& m, const Grid& grid);

struct BruteforceResult {
  double value = 0.0;   // extrapolated
  double error = 0.0;   // Richardson estimate
  double coarse = 0.0;  // lattice with fine_n cells per axis
  double fine = 0.0;    // lattice with 2 fine_n cells per axis
};

// kappa* at x on Cartesian lattices over [-R, R]^dim with recursively refined cut
// cells and an excluded ball of eight cells, extrapolated in the lattice size;
// the error compares extrapolations from fine_n/2, fine_n and 2 fine_n.
BruteforceResult curvature_bruteforce(const Vec& x, const PointFunction& U, const Kernel& K, int fine_n);

struct RadiusCurve {
  std::vector<double> t;
  std::vector<double> rho;
  double rho_T = 0.0;
  double T = 0.0;
  std::string kernel;
  bool truncated = false;

  // Linear interpolation in t; throws InputError outside the sampled range.
  double at(double time) const;
};

// Radius of a ball under the integral curvature flow, integrated backward from
// rho_T at T over `duration` with RK4; the sphere curvature is tabulated from
// curvature_bruteforce and interpolated by a cubic B-spline.
RadiusCurve radius_ode(const Kernel& K, double rho_T, double T, double duration, int steps, int fine_n = 400);

// Same integration with a supplied curvature law.
RadiusCurve radius_ode(const std::function<double(double)>& kbar, double rho_T, double T, double duration,
                       int steps);

}  // namespace repgames
