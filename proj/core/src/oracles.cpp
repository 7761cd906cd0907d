#include "repgames/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "repgames/error.hpp"
#include "repgames/parallel.hpp"

namespace repgames {

double eikonal_exact(double v, const PointFunction& u_T, double duration, const Vec& x, int dim) {
  if (!(duration >= 0.0)) throw InputError("eikonal_exact: negative duration");
  const double r = std::abs(v) * duration;
  if (r == 0.0) return u_T(x);
  const double sgn = v > 0.0 ? 1.0 : -1.0;
  // Maximize sgn * u_T over the ball.
  auto f = [&](const Vec& y) { return sgn * u_T(y); };
  if (dim == 1) {
    const int n = 4000;
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
      const double val = f(Vec(x[0] - r + 2.0 * r * i / n, 0.0));
      if (val > bv) {
        bv = val;
        best = i;
      }
    }
    const double a = x[0] - r + 2.0 * r * std::max(0, best - 1) / n;
    const double b = x[0] - r + 2.0 * r * std::min(n, best + 1) / n;
    const auto m = boost::math::tools::brent_find_minima([&](double s) { return -f(Vec(s, 0.0)); }, a, b, 52);
    return sgn * std::max(bv, -m.second);
  }
  const int n = 400;
  double bv = -std::numeric_limits<double>::infinity();
  Vec by = x;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Vec y = x + Vec(-r + 2.0 * r * i / n, -r + 2.0 * r * j / n);
      if ((y - x).norm() > r) continue;
      const double val = f(y);
      if (val > bv) {
        bv = val;
        by = y;
      }
    }
  // Pattern search refinement inside the ball.
  for (double step = 2.0 * r / n; step > 1e-12 * std::max(1.0, r); step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const Vec& d : {Vec(1, 0), Vec(-1, 0), Vec(0, 1), Vec(0, -1)}) {
        Vec y = by + step * d;
        if ((y - x).norm() > r) y = x + r * (y - x).normalized();
        const double val = f(y);
        if (val > bv) {
          bv = val;
          by = y;
          moved = true;
        }
      }
    }
  }
  return sgn * bv;
}

namespace {

// Tent weights mu_k for lattice pair sums; index 0 unused.
std::vector<double> tent_weights(const LevyMeasure& m, double h) {
  if (m.dim() != 1) throw ConfigError("pide_reference: only one-dimensional measures are supported");
  const double R = m.trunc_R();
  const int kmax = static_cast<int>(std::ceil(R / h - 1e-12)) + 1;
  std::vector<double> mu(static_cast<std::size_t>(kmax) + 1, 0.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double r) { return m.density(r); };
  auto integrate = [&](auto g, double a, double b) {
    b = std::min(b, R);
    if (!(b > a)) return 0.0;
    return ts.integrate(g, a, b);
  };
  // Quadratic interpolation of the pair sum on [0, h].
  mu[1] += integrate([&](double r) { return f(r) * r * r / (h * h); }, 0.0, h);
  for (int k = 1; k < kmax; ++k) {
    const double a = k * h, b = (k + 1) * h;
    mu[k] += integrate([&](double r) { return f(r) * (b - r) / h; }, a, b);
    mu[k + 1] += integrate([&](double r) { return f(r) * (r - a) / h; }, a, b);
  }
  return mu;
}

}  // namespace

double pide_reference_stable_dt(const LevyMeasure& m, const Grid& grid) {
  const auto mu = tent_weights(m, grid.h(0));
  double total = 0.0;
  for (double w : mu) total += 2.0 * w;
  return total > 0.0 ? 1.0 / total : std::numeric_limits<double>::infinity();
}

ScalarField pide_reference(const LevyMeasure& m, const ScalarField& u_T, double duration, double fine_dt) {
  const Grid& g = u_T.grid();
  if (g.dim() != 1) throw ConfigError("pide_reference: only one-dimensional grids are supported");
  if (!(fine_dt > 0.0)) throw ConfigError("pide_reference: fine_dt must be positive");
  if (!(duration >= 0.0)) throw InputError("pide_reference: negative duration");
  const auto mu = tent_weights(m, g.h(0));
  double total = 0.0;
  for (double w : mu) total += 2.0 * w;
  if (fine_dt * total >= 1.0) throw ConfigError("pide_reference: fine_dt violates the stability limit");
  const int steps = std::max(1, static_cast<int>(std::ceil(duration / fine_dt - 1e-9)));
  const double dt = duration / steps;
  const int n = g.n(0);
  std::vector<double> w = u_T.values(), next(w.size());
  auto at = [&](int i) { return w[static_cast<std::size_t>(std::clamp(i, 0, n - 1))]; };
  for (int s = 0; s < steps && duration > 0.0; ++s) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 1; k < mu.size(); ++k) {
        const int kk = static_cast<int>(k);
        acc += mu[k] * (at(i + kk) + at(i - kk) - 2.0 * w[i]);
      }
      next[i] = w[i] + dt * acc;
    }
    w.swap(next);
  }
  return ScalarField(g, w);
}

namespace {

double lattice_kappa(const Vec& x, const PointFunction& U, const Kernel& K, int n) {
  const double R = K.support();
  const double hb = 2.0 * R / n;
  const double excl = 8.0 * hb;
  const double u0 = U(x);
  const int dim = K.dim();
  const int depth = 6;
  // K is even, so the indicator can be symmetrized under z -> -z; it then
  // vanishes wherever z and -z lie on opposite sides.
  auto sgn = [&](const Vec& z) { return 0.5 * ((U(x + z) >= u0 ? 1.0 : -1.0) + (U(x - z) >= u0 ? 1.0 : -1.0)); };
  auto weight = [&](const Vec& z) {
    const double r = dim == 1 ? std::abs(z[0]) : z.norm();
    return r < excl || r >= R ? 0.0 : K(z);
  };
  // Midpoint rule, splitting cells whose corners disagree.
  std::function<double(double, double, double, int)> cell2 = [&](double a, double b, double s, int d) -> double {
    const double c = sgn(Vec(a, b));
    const bool cut = sgn(Vec(a + s, b)) != c || sgn(Vec(a, b + s)) != c || sgn(Vec(a + s, b + s)) != c;
    if (!cut || d == depth) {
      const Vec zc(a + 0.5 * s, b + 0.5 * s);
      return weight(zc) * sgn(zc) * s * s;
    }
    const double t = 0.5 * s;
    return cell2(a, b, t, d + 1) + cell2(a + t, b, t, d + 1) + cell2(a, b + t, t, d + 1) +
           cell2(a + t, b + t, t, d + 1);
  };
  std::function<double(double, double, int)> cell1 = [&](double a, double s, int d) -> double {
    if (sgn(Vec(a, 0.0)) == sgn(Vec(a + s, 0.0)) || d == depth) {
      const Vec zc(a + 0.5 * s, 0.0);
      return weight(zc) * sgn(zc) * s;
    }
    return cell1(a, 0.5 * s, d + 1) + cell1(a + 0.5 * s, 0.5 * s, d + 1);
  };
  if (dim == 1) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += cell1(-R + i * hb, hb, 0);
    return acc;
  }
  std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    const double b = -R + static_cast<double>(j) * hb;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += cell2(-R + i * hb, b, hb, 0);
    rows[j] = acc;
  });
  double acc = 0.0;
  for (double r : rows) acc += r;
  return acc;
}

}  // namespace

BruteforceResult curvature_bruteforce(const Vec& x, const PointFunction& U, const Kernel& K, int fine_n) {
  if (fine_n < 16) throw ConfigError("curvature_bruteforce: fine_n must be >= 16");
  BruteforceResult r;
  const double k1 = lattice_kappa(x, U, K, fine_n / 2);
  r.coarse = lattice_kappa(x, U, K, fine_n);
  r.fine = lattice_kappa(x, U, K, 2 * fine_n);
  const double p = K.bounded() ? 3.0 : 1.0 - K.singularity();
  const double q = std::pow(2.0, p) - 1.0;
  const double e0 = r.coarse + (r.coarse - k1) / q;
  r.value = r.fine + (r.fine - r.coarse) / q;
  r.error = std::abs(r.value - e0);
  return r;
}

double RadiusCurve::at(double time) const {
  if (t.empty()) throw InputError("radius curve: empty");
  // Samples run backward from T.
  const double lo = t.back(), hi = t.front();
  if (time < lo - 1e-12 || time > hi + 1e-12) throw InputError("radius curve: time outside sampled range");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (time <= t[i] + 1e-15 && time >= t[i + 1] - 1e-15) {
      const double a = (t[i] - time) / (t[i] - t[i + 1]);
      return (1.0 - a) * rho[i] + a * rho[i + 1];
    }
  return rho.back();
}

RadiusCurve radius_ode(const std::function<double(double)>& kbar, double rho_T, double T, double duration,
                       int steps) {
  if (!(rho_T > 0.0)) throw InputError("radius_ode: rho_T must be positive");
  if (steps < 1 || !(duration >= 0.0)) throw InputError("radius_ode: need steps >= 1 and duration >= 0");
  RadiusCurve c;
  c.rho_T = rho_T;
  c.T = T;
  const double ds = duration / steps;
  double rho = rho_T;
  c.t.push_back(T);
  c.rho.push_back(rho);
  for (int k = 0; k < steps; ++k) {
    const double k1 = kbar(rho);
    const double k2 = kbar(rho + 0.5 * ds * k1);
    const double k3 = kbar(rho + 0.5 * ds * k2);
    const double k4 = kbar(rho + ds * k3);
    rho += ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(rho > 0.0)) {
      c.truncated = true;
      break;
    }
    c.t.push_back(T - (k + 1) * ds);
    c.rho.push_back(rho);
  }
  return c;
}

RadiusCurve radius_ode(const Kernel& K, double rho_T, double T, double duration, int steps, int fine_n) {
  if (K.dim() != 2) throw ConfigError("radius_ode: needs a two-dimensional kernel");
  // Table from a small radius up to slightly above rho_T.
  const int nt = 25;
  const double lo = std::max(0.05, 0.2 * rho_T), hi = 1.05 * rho_T;
  const double step = (hi - lo) / (nt - 1);
  std::vector<double> table(nt);
  for (int i = 0; i < nt; ++i) {
    const double r = lo + i * step;
    table[static_cast<std::size_t>(i)] =
        curvature_bruteforce(Vec(r, 0.0), [r](const Vec& z) { return r - z.norm(); }, K, fine_n).value;
  }
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline(table.begin(), table.end(), lo, step);
  bool below = false;
  auto kbar = [&](double r) {
    if (r < lo) {
      below = true;
      return table.front();
    }
    return spline(std::min(r, hi));
  };
  RadiusCurve c = radius_ode(kbar, rho_T, T, duration, steps);
  c.kernel = K.name();
  if (below) c.truncated = true;
  return c;
}

}  // namespace repgames
