#pragma once

#include <memory>
#include <vector>

#include "repgames/curvature.hpp"
#include "repgames/grid.hpp"

namespace repgames {

// Hypersurfaces offered to the players of the curvature game.
//   Sphere:    phi(z) = orient * (radius - |z - center|)
//   Parabola:  phi(z) = n.(z - y) + k/2 ((z - y).t)^2, t the rotated normal
//   Quadratic: an arbitrary test function
struct Hypersurface {
  enum class Kind { Sphere, Parabola, Quadratic };
  Kind kind = Kind::Sphere;
  Vec center = Vec::Zero();  // sphere center, or parabola vertex y
  double radius = 1.0;
  int orient = 1;
  Vec normal = Vec(1.0, 0.0);
  double curvature = 0.0;
  std::shared_ptr<const QuadraticTest> test;

  static Hypersurface sphere(const Vec& center, double radius, int orient);
  static Hypersurface parabola(const Vec& vertex, const Vec& normal, double curvature);
  static Hypersurface quadratic(QuadraticTest q);

  double value(const Vec& z) const;
  Vec gradient(const Vec& z) const;
  Hypersurface negated() const;
};

// Sign of phi(z) - phi(y) computed without cancellation issues and exactly
// mirrored under negation of phi.
double level_difference(const Hypersurface& s, const Vec& z, const Vec& y);

// Integral curvatures of spheres (per radius and orientation) and parabolas
// (per signed curvature) for a radial kernel. Rotation invariance makes them
// independent of the anchor and the normal direction.
class CurvatureTable {
 public:
  CurvatureTable(const Kernel& K, std::vector<double> radii, std::vector<double> parabola_curvatures,
                 const KappaOptions& opts);

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& parabola_curvatures() const { return parab_k_; }
  // orient_index: 0 for orient +1, 1 for orient -1.
  const KappaResult& sphere(std::size_t radius_index, int orient_index) const {
    return sphere_[2 * radius_index + orient_index];
  }
  const KappaResult& parabola(std::size_t index) const { return parab_[index]; }
  double max_error_bar() const;

 private:
  std::vector<double> radii_;
  std::vector<double> parab_k_;
  std::vector<KappaResult> sphere_;
  std::vector<KappaResult> parab_;
};

std::vector<double> log_radii(double r_min, double r_max, double ratio);

}  // namespace repgames
