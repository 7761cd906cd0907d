#include "repgames/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "repgames/error.hpp"

namespace repgames {

namespace {

using GL8 = boost::math::quadrature::gauss<double, 8>;

struct RadialNode {
  double r;
  double weight;  // includes K(r) and the polar Jacobian
};

std::vector<RadialNode> radial_nodes(const Kernel& K, double r0, int panels) {
  std::vector<RadialNode> out;
  const double R = K.support();
  const double a = std::log(r0), b = std::log(R);
  const auto& xs = GL8::abscissa();
  const auto& ws = GL8::weights();
  for (int p = 0; p < panels; ++p) {
    const double u0 = a + (b - a) * p / panels, u1 = a + (b - a) * (p + 1) / panels;
    const double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (int s = -1; s <= 1; s += 2) {
        if (xs[i] == 0.0 && s > 0) continue;
        const double u = mid + s * half * xs[i];
        const double r = std::exp(u);
        // dz = r^(dim-1) dr dtheta and dr = r du
        const double jac = K.dim() == 1 ? r : r * r;
        out.push_back({r, half * ws[i] * jac * K.radial(r)});
      }
  }
  return out;
}

struct Sums {
  double star = 0.0;
  double sub = 0.0;
};

// Symmetric-pair sums at a given angular resolution.
Sums pair_sums(const Vec& x, const LevelFunction& U, double u0, const Kernel& K, const std::vector<RadialNode>& rad,
               int angles) {
  Sums s;
  auto add = [&](const Vec& z, double w) {
    const double a = U(x + z), b = U(x - z);
    s.star += w * ((a >= u0 ? 1.0 : -1.0) + (b >= u0 ? 1.0 : -1.0));
    s.sub += w * ((a > u0 ? 1.0 : -1.0) + (b > u0 ? 1.0 : -1.0));
  };
  if (K.dim() == 1) {
    for (const auto& n : rad) add(Vec(n.r, 0.0), n.weight);
    return s;
  }
  const double dth = std::numbers::pi / angles;
  std::vector<Vec> dirs(angles);
  for (int k = 0; k < angles; ++k) {
    const double th = (k + 0.5) * dth;
    dirs[k] = Vec(std::cos(th), std::sin(th));
  }
  for (const auto& n : rad)
    for (const Vec& d : dirs) add(n.r * d, n.weight * dth);
  return s;
}

}  // namespace

double level_set_curvature(const Jet& j) {
  const double g = j.grad.norm();
  if (g == 0.0) return std::numeric_limits<double>::infinity();
  const Vec t(-j.grad[1] / g, j.grad[0] / g);
  return std::abs(t.dot(j.hess * t)) / g;
}

double signed_level_curvature(const Jet& j) {
  const double g = j.grad.norm();
  if (g == 0.0) return 0.0;
  const Vec t(-j.grad[1] / g, j.grad[0] / g);
  return -t.dot(j.hess * t) / g;
}

KappaResult kappa(const Vec& x, const LevelFunction& U, double curvature_hint, const Kernel& K,
                  const KappaOptions& opts) {
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw InputError("kappa: non-finite point");
  const double R = K.support();
  double r0 = opts.exclusion > 0.0 ? opts.exclusion : 0.02 * R;
  r0 = std::min(r0, 0.5 * R);
  const double u0 = U(x);
  const auto rad = radial_nodes(K, r0, opts.radial_panels);
  const Sums fine = pair_sums(x, U, u0, K, rad, opts.angles);
  KappaResult res;
  res.kappa_star = fine.star;
  res.kappa_sub = fine.sub;
  // Discretization: halve each resolution separately.
  const auto coarse_rad = radial_nodes(K, r0, std::max(1, opts.radial_panels / 2));
  const Sums half_r = pair_sums(x, U, u0, K, coarse_rad, opts.angles);
  const Sums half_a = pair_sums(x, U, u0, K, rad, std::max(1, opts.angles / 2));
  res.discretization = std::max({std::abs(fine.star - half_r.star), std::abs(fine.sub - half_r.sub),
                                 std::abs(fine.star - half_a.star), std::abs(fine.sub - half_a.sub)});
  // Excluded ball: only the part where the level set leaves its tangent
  // survives the pairing; it lies in the paraboloid Q(1/k, n).
  double excluded = K.bounded() ? K.mass_inside(r0) : std::numeric_limits<double>::infinity();
  if (K.dim() == 1) {
    excluded = 0.0;
    const double h = r0 / 16.0;
    // U must be strictly monotone through x on the excluded segment.
    bool monotone = true;
    const double s = U(x + Vec(h, 0.0)) - U(x - Vec(h, 0.0));
    for (int k = 1; k <= 16 && monotone; ++k) {
      const double up = U(x + Vec(k * h, 0.0)), dn = U(x - Vec(k * h, 0.0));
      monotone = s > 0.0 ? (up > u0 && dn < u0) : (s < 0.0 && up < u0 && dn > u0);
    }
    if (!monotone) excluded = K.bounded() ? K.mass_inside(r0) : std::numeric_limits<double>::infinity();
  } else if (std::isfinite(curvature_hint) && curvature_hint >= 0.0) {
    const double k = std::max(curvature_hint, 1e-12);
    excluded = std::min(excluded, 2.0 * K.paraboloid_mass(1.0 / k, r0));
  }
  if (K.dim() == 2 && std::isfinite(opts.near_curvature)) {
    const double k = opts.near_curvature;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double m = ts.integrate([&K](double s) { return s > 1e-100 ? s * s * K.radial(s) : 0.0; }, 0.0, r0);
    const double corr = -2.0 * k * m;
    res.kappa_star += corr;
    res.kappa_sub += corr;
    excluded = std::abs(corr) * std::min(1.0, 2.0 * std::abs(k) * r0);
  }
  res.excluded_bound = excluded;
  res.error_bar = res.discretization + excluded;
  res.flagged = !(res.error_bar <= opts.tolerance);
  return res;
}

KappaResult kappa(const Vec& x, const QuadraticTest& U, const Kernel& K, KappaOptions opts) {
  const Jet j = eval_test(U, x);
  if (!std::isfinite(opts.near_curvature) && j.grad.norm() > 0.0) opts.near_curvature = signed_level_curvature(j);
  return kappa(x, [&U](const Vec& z) { return eval_value(U, z); }, 2.0 * level_set_curvature(j), K, opts);
}

KappaResult kappa(const Vec& x, const ScalarField& U, const Kernel& K, KappaOptions opts) {
  const double w = default_mollify_width(U.grid());
  if (!(opts.exclusion > 0.0)) opts.exclusion = 2.0 * U.grid().h(0);
  const Jet j = mollified_jet(U, x, w);
  if (!std::isfinite(opts.near_curvature) && j.grad.norm() > 0.0) opts.near_curvature = signed_level_curvature(j);
  return kappa(x, [&U, w](const Vec& z) { return mollified_value(U, z, w); }, 2.0 * level_set_curvature(j), K, opts);
}

}  // namespace repgames
