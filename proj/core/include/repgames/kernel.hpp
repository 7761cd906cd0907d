#pragma once

#include <string>
#include <vector>

#include "repgames/types.hpp"

namespace repgames {

// Even radial kernel K(z) = amplitude * C(|z|/R) / |z|^(dim+alpha), with the
// smooth cutoff C(s) = exp(1 - 1/(1 - s^2)) on s < 1. alpha = 0 with the
// `bump` flag gives a bounded kernel normalized to unit mass.
class Kernel {
 public:
  static Kernel bump(int dim, double R = 1.0);
  static Kernel power(int dim, double alpha, double R = 1.0, double amplitude = kDefaultAmplitude);

  // "bump", "bump(R)", "power(alpha, R)", "power(alpha, R, amplitude)".
  static Kernel from_name(const std::string& spec, int dim);

  static constexpr double kDefaultAmplitude = 0.2;

  int dim() const { return dim_; }
  double support() const { return R_; }
  double singularity() const { return alpha_; }
  bool bounded() const { return bounded_; }
  double amplitude() const { return amp_; }
  std::string name() const;

  double radial(double r) const;
  double operator()(const Vec& z) const { return radial(dim_ == 1 ? std::abs(z[0]) : z.norm()); }

  // Integral of K over {|z| > delta}; infinite when it diverges.
  double mass_outside(double delta) const;
  // Integral of K over B_delta; infinite for singular kernels.
  double mass_inside(double delta) const;
  // Integral of K over B_delta intersected with the paraboloid Q(r, e).
  double paraboloid_mass(double r, double delta) const;

 private:
  Kernel(int dim, double alpha, double R, double amp, bool bounded);
  int dim_;
  double alpha_;
  double R_;
  double amp_;
  bool bounded_;
};

struct KernelReport {
  bool valid = false;
  std::vector<double> scales;
  std::vector<double> outside_mass_scaled;  // delta * integral of K over |z| > delta
  std::vector<double> paraboloid_scaled;    // r * integral of K over Q(r, e)
  std::string diagnostic;
};

KernelReport validate_kernel(const Kernel& K);

}  // namespace repgames
