#include "repgames/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "repgames/error.hpp"
#include "repgames/parse.hpp"

namespace repgames {

namespace {

double cutoff_profile(double s) {
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double sphere_area(int dim) { return dim == 1 ? 2.0 : 2.0 * std::numbers::pi; }

struct Converged {
  double value;
  bool finite;
};

// Integral of f over (0, b] on geometric pieces towards 0; the tail is
// extrapolated from the ratio of successive pieces.
template <class F>
Converged integrate_to_zero(F f, double b) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0, prev = 0.0, inc = 0.0, ratio = 1.0;
  double hi = b;
  for (int k = 0; k < 12; ++k) {
    const double lo = hi * 0.1;
    inc = gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, 1e-12);
    total += inc;
    if (k > 0) ratio = prev > 0.0 ? inc / prev : 0.0;
    prev = inc;
    hi = lo;
  }
  if (!(ratio < 0.95)) return {std::numeric_limits<double>::infinity(), false};
  return {total + inc * ratio / (1.0 - ratio), true};
}

}  // namespace

Kernel::Kernel(int dim, double alpha, double R, double amp, bool bounded)
    : dim_(dim), alpha_(alpha), R_(R), amp_(amp), bounded_(bounded) {
  if (dim != 1 && dim != 2) throw ConfigError("kernel: dimension must be 1 or 2");
  if (!(R > 0.0)) throw ConfigError("kernel: support radius must be positive");
  if (!(amp > 0.0)) throw ConfigError("kernel: amplitude must be positive");
}

Kernel Kernel::bump(int dim, double R) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double r) { return std::pow(r, dim - 1) * cutoff_profile(r / R); };
  const double mass = sphere_area(dim) * gauss_kronrod<double, 61>::integrate(f, 0.0, R, 10, 1e-13);
  return Kernel(dim, 0.0, R, 1.0 / mass, true);
}

Kernel Kernel::power(int dim, double alpha, double R, double amplitude) {
  if (!(alpha > 0.0)) throw ConfigError("kernel: power exponent must be positive");
  return Kernel(dim, alpha, R, amplitude, false);
}

Kernel Kernel::from_name(const std::string& spec, int dim) {
  CallSpec c = parse_call(spec);
  if (c.name == "bump") {
    if (c.args.size() > 1) throw ConfigError("bump takes at most one argument (R)");
    return bump(dim, c.args.empty() ? 1.0 : c.args[0]);
  }
  if (c.name == "power") {
    if (c.args.size() < 2 || c.args.size() > 3) throw ConfigError("power takes (alpha, R[, amplitude])");
    return power(dim, c.args[0], c.args[1], c.args.size() == 3 ? c.args[2] : kDefaultAmplitude);
  }
  throw ConfigError("unknown kernel '" + c.name + "'; registry: bump, bump(R), power(alpha, R[, amplitude])");
}

std::string Kernel::name() const {
  std::ostringstream s;
  if (bounded_)
    s << "bump(" << R_ << ")";
  else
    s << "power(" << alpha_ << ", " << R_ << ", " << amp_ << ")";
  return s.str();
}

double Kernel::radial(double r) const {
  if (r >= R_) return 0.0;
  const double c = amp_ * cutoff_profile(r / R_);
  if (bounded_) return c;
  if (r <= 0.0) return std::numeric_limits<double>::infinity();
  return c * std::pow(r, -dim_ - alpha_);
}

double Kernel::mass_outside(double delta) const {
  using boost::math::quadrature::gauss_kronrod;
  if (delta >= R_) return 0.0;
  if (delta <= 0.0) return bounded_ ? mass_inside(R_) : std::numeric_limits<double>::infinity();
  auto f = [&](double r) { return std::pow(r, dim_ - 1) * radial(r); };
  // Geometric panels resolve the singular end.
  double total = 0.0, a = delta;
  while (a < R_) {
    const double b = std::min(R_, 2.0 * a);
    total += gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-13);
    a = b;
  }
  return sphere_area(dim_) * total;
}

double Kernel::mass_inside(double delta) const {
  if (!bounded_) return std::numeric_limits<double>::infinity();
  auto f = [&](double r) { return std::pow(r, dim_ - 1) * radial(r); };
  const double d = std::min(delta, R_);
  return sphere_area(dim_) * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, d, 10, 1e-13);
}

double Kernel::paraboloid_mass(double r, double delta) const {
  if (dim_ == 1) return 0.0;  // Q(r, e) is {0} on the line
  const double d = std::min(delta, R_);
  // On the circle |z| = s the paraboloid keeps |cos| <= c*, with
  // (s/r) c^2 + c - s/r = 0.
  auto f = [&](double s) {
    const double q = s / r;
    const double c = q > 1e-8 ? (-1.0 + std::sqrt(1.0 + 4.0 * q * q)) / (2.0 * q) : q;
    return s * radial(s) * 4.0 * std::asin(std::min(1.0, c));
  };
  Converged v = integrate_to_zero(f, d);
  return v.value;
}

KernelReport validate_kernel(const Kernel& K) {
  KernelReport rep;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    Vec z(u(rng), K.dim() == 2 ? u(rng) : 0.0);
    z *= K.support();
    if (K(z) != K(-z) || K(z) < 0.0) {
      rep.diagnostic = "kernel is not even and nonnegative";
      return rep;
    }
    const double s = 1.0 + std::abs(u(rng));
    if (K(z.normalized() * K.support() * s) != 0.0) {
      rep.diagnostic = "kernel does not vanish outside its support";
      return rep;
    }
  }
  for (int k = 0; k < 6; ++k) rep.scales.push_back(0.05 * K.support() * std::ldexp(1.0, -k));
  for (double d : rep.scales) {
    rep.outside_mass_scaled.push_back(d * K.mass_outside(d));
    rep.paraboloid_scaled.push_back(d * K.paraboloid_mass(d, K.support()));
  }
  for (std::size_t i = 0; i < rep.scales.size(); ++i) {
    if (!std::isfinite(rep.outside_mass_scaled[i]) || !std::isfinite(rep.paraboloid_scaled[i])) {
      rep.diagnostic = "kernel integral diverges";
      return rep;
    }
    if (i > 0 && !(rep.outside_mass_scaled[i] < rep.outside_mass_scaled[i - 1])) {
      rep.diagnostic = "delta * mass outside B_delta does not decrease";
      return rep;
    }
    if (i > 0 && K.dim() == 2 && !(rep.paraboloid_scaled[i] < rep.paraboloid_scaled[i - 1])) {
      rep.diagnostic = "r * paraboloid mass does not decrease";
      return rep;
    }
  }
  rep.valid = true;
  rep.diagnostic = "ok";
  return rep;
}

}  // namespace repgames
