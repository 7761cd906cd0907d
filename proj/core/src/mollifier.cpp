#include "repgames/mollifier.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "repgames/error.hpp"

namespace repgames {

namespace {

struct Weights1d {
  int first = 0;
  int count = 0;
  std::array<std::array<double, 3>, 8> w{};  // per node: value, d/dx, d2/dx2
};

inline double bump(double s) {
  const double q = 1.0 - s * s;
  return 35.0 / 32.0 * q * q * q;
}
inline double bump_d1(double s) {
  const double q = 1.0 - s * s;
  return -105.0 / 16.0 * s * q * q;
}
inline double bump_d2(double s) {
  const double q = 1.0 - s * s;
  return -105.0 / 16.0 * q * (1.0 - 5.0 * s * s);
}

const std::array<double, 4>& gl_nodes() {
  static const std::array<double, 4> x = [] {
    using G = boost::math::quadrature::gauss<double, 4>;
    const auto& a = G::abscissa();
    return std::array<double, 4>{-a[1], -a[0], a[0], a[1]};
  }();
  return x;
}
const std::array<double, 4>& gl_weights() {
  static const std::array<double, 4> w = [] {
    using G = boost::math::quadrature::gauss<double, 4>;
    const auto& b = G::weights();
    return std::array<double, 4>{b[1], b[0], b[0], b[1]};
  }();
  return w;
}

// Weights of node values in the mollified 1D interpolant and its first two
// derivatives at coordinate x along `axis`.
Weights1d weights_1d(const Grid& g, int axis, double x, double width) {
  const int n = g.n(axis);
  const double lo = g.lo(axis), hi = g.hi(axis), h = g.h(axis);
  Weights1d out;
  const double a = x - width, b = x + width;
  // Breakpoints: window ends, box ends, grid lines inside the window.
  std::array<double, 16> br{};
  int nb = 0;
  br[nb++] = a;
  int k0 = static_cast<int>(std::ceil((a - lo) / h));
  for (int k = std::max(k0, 0); k < n; ++k) {
    double u = lo + k * h;
    if (u >= b) break;
    if (u > a && nb < 15) br[nb++] = u;
  }
  br[nb++] = b;
  // Nodes touched: clamp the window into the box.
  const int first = std::max(0, std::min(n - 1, static_cast<int>(std::floor((std::max(a, lo) - lo) / h))));
  const int last = std::max(0, std::min(n - 1, static_cast<int>(std::ceil((std::min(b, hi) - lo) / h))));
  out.first = first;
  out.count = last - first + 1;
  if (out.count > 8) throw ConfigError("mollifier width too large for the weight buffer");
  const auto& gx = gl_nodes();
  const auto& gw = gl_weights();
  const double iw = 1.0 / width;
  for (int p = 0; p + 1 < nb; ++p) {
    const double u0 = br[p], u1 = br[p + 1];
    if (u1 <= u0) continue;
    const double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
    for (int q = 0; q < 4; ++q) {
      const double u = mid + half * gx[q];
      const double s = (x - u) * iw;
      const double jac = half * gw[q];
      const double r0 = bump(s) * iw * jac;
      const double r1 = bump_d1(s) * iw * iw * jac;
      const double r2 = bump_d2(s) * iw * iw * iw * jac;
      double t = (std::min(std::max(u, lo), hi) - lo) / h;
      int c = std::min(static_cast<int>(t), n - 2);
      double f = t - c;
      for (int side = 0; side < 2; ++side) {
        const int node = c + side;
        const double phi = side == 0 ? 1.0 - f : f;
        if (phi == 0.0) continue;
        auto& w = out.w[node - first];
        w[0] += r0 * phi;
        w[1] += r1 * phi;
        w[2] += r2 * phi;
      }
    }
  }
  return out;
}

}  // namespace

double default_mollify_width(const Grid& grid) { return 2.0 * grid.h(0); }

Jet mollified_jet(const ScalarField& f, const Vec& x, double width) {
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw InputError("mollified_jet: non-finite point");
  if (!(width > 0.0)) throw ConfigError("mollify width must be positive");
  const Grid& g = f.grid();
  Jet j;
  Weights1d wx = weights_1d(g, 0, x[0], width);
  if (g.dim() == 1) {
    for (int i = 0; i < wx.count; ++i) {
      const double v = f[wx.first + i];
      j.value += v * wx.w[i][0];
      j.grad[0] += v * wx.w[i][1];
      j.hess(0, 0) += v * wx.w[i][2];
    }
    return j;
  }
  Weights1d wy = weights_1d(g, 1, x[1], width);
  for (int jy = 0; jy < wy.count; ++jy) {
    const auto& by = wy.w[jy];
    for (int ix = 0; ix < wx.count; ++ix) {
      const auto& ax = wx.w[ix];
      const double v = f[g.index(wx.first + ix, wy.first + jy)];
      j.value += v * ax[0] * by[0];
      j.grad[0] += v * ax[1] * by[0];
      j.grad[1] += v * ax[0] * by[1];
      j.hess(0, 0) += v * ax[2] * by[0];
      j.hess(1, 1) += v * ax[0] * by[2];
      j.hess(0, 1) += v * ax[1] * by[1];
    }
  }
  j.hess(1, 0) = j.hess(0, 1);
  return j;
}

double mollified_value(const ScalarField& f, const Vec& x, double width) {
  return mollified_jet(f, x, width).value;
}

QuadraticTest QuadraticTest::quadratic(const Vec& center, double c, const Vec& p, const Mat& gamma) {
  QuadraticTest q;
  q.center = center;
  q.c = c;
  q.p = p;
  q.gamma = 0.5 * (gamma + gamma.transpose());
  return q;
}

QuadraticTest QuadraticTest::mollified(std::shared_ptr<const ScalarField> base, double width) {
  QuadraticTest q;
  q.base = std::move(base);
  q.mollify_width = width;
  return q;
}

Jet eval_test(const QuadraticTest& q, const Vec& x) {
  const Vec d = x - q.center;
  Jet j;
  j.value = q.c + q.p.dot(d) + 0.5 * d.dot(q.gamma * d);
  j.grad = q.p + q.gamma * d;
  j.hess = q.gamma;
  if (q.base && q.base_scale != 0.0) {
    Jet b = mollified_jet(*q.base, x, q.mollify_width);
    j.value += q.base_scale * b.value;
    j.grad += q.base_scale * b.grad;
    j.hess += q.base_scale * b.hess;
  }
  return j;
}

double eval_value(const QuadraticTest& q, const Vec& x) {
  const Vec d = x - q.center;
  double v = q.c + q.p.dot(d) + 0.5 * d.dot(q.gamma * d);
  if (q.base && q.base_scale != 0.0) v += q.base_scale * mollified_value(*q.base, x, q.mollify_width);
  return v;
}

}  // namespace repgames
