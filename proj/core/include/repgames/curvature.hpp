#pragma once

#include <functional>
#include <limits>

#include "repgames/kernel.hpp"
#include "repgames/mollifier.hpp"

namespace repgames {

struct KappaOptions {
  double exclusion = 0.0;   // radius of the excluded ball; 0 selects a default
  int radial_panels = 32;   // Gauss-Legendre panels in log r
  int angles = 1024;        // directions on the half circle (pairs cover the full circle)
  double tolerance = 1e-2;  // error bars above this flag the result
  // Signed curvature of the level set at x, positive when {U >= U(x)} is
  // locally convex. When finite, the leading part of the excluded ball
  // -2 k int_0^r0 s^2 K(s) ds is added and only the remainder enters the error bar.
  double near_curvature = std::numeric_limits<double>::quiet_NaN();
};

struct KappaResult {
  double kappa_star = 0.0;  // uses {U >= U(x)} as the positive side
  double kappa_sub = 0.0;   // uses {U > U(x)}
  double error_bar = 0.0;
  double excluded_bound = 0.0;
  double discretization = 0.0;
  bool flagged = false;
};

using LevelFunction = std::function<double(const Vec&)>;

// Integral curvature of the level set of U through x. `curvature_hint` bounds
// the curvature of that level set near x and sizes the excluded-ball error bar.
KappaResult kappa(const Vec& x, const LevelFunction& U, double curvature_hint, const Kernel& K,
                  const KappaOptions& opts = {});
KappaResult kappa(const Vec& x, const QuadraticTest& U, const Kernel& K, KappaOptions opts = {});
// Grid fields are read through their mollified interpolant; default exclusion 2h.
KappaResult kappa(const Vec& x, const ScalarField& U, const Kernel& K, KappaOptions opts = {});

// Curvature of the level set through x of a function with the given jet.
double level_set_curvature(const Jet& j);
// Same with the sign convention of KappaOptions::near_curvature; 0 for a vanishing gradient.
double signed_level_curvature(const Jet& j);

// Jet-based overloads fill near_curvature when it is unset.

}  // namespace repgames
