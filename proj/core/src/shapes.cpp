#include "repgames/shapes.hpp"

#include <cmath>

#include "repgames/error.hpp"
#include "repgames/parallel.hpp"

namespace repgames {

namespace {
inline Vec rotated(const Vec& n) { return Vec(-n[1], n[0]); }
}  // namespace

Hypersurface Hypersurface::sphere(const Vec& center, double radius, int orient) {
  Hypersurface s;
  s.kind = Kind::Sphere;
  s.center = center;
  s.radius = radius;
  s.orient = orient >= 0 ? 1 : -1;
  return s;
}

Hypersurface Hypersurface::parabola(const Vec& vertex, const Vec& normal, double curvature) {
  Hypersurface s;
  s.kind = Kind::Parabola;
  s.center = vertex;
  s.normal = normal;
  s.curvature = curvature;
  return s;
}

Hypersurface Hypersurface::quadratic(QuadraticTest q) {
  Hypersurface s;
  s.kind = Kind::Quadratic;
  s.test = std::make_shared<const QuadraticTest>(std::move(q));
  return s;
}

double Hypersurface::value(const Vec& z) const {
  switch (kind) {
    case Kind::Sphere:
      return orient * (radius - (z - center).norm());
    case Kind::Parabola: {
      const Vec d = z - center;
      const double s = d.dot(rotated(normal));
      return normal.dot(d) + 0.5 * curvature * s * s;
    }
    case Kind::Quadratic:
      return eval_value(*test, z);
  }
  return 0.0;
}

Vec Hypersurface::gradient(const Vec& z) const {
  switch (kind) {
    case Kind::Sphere: {
      const Vec d = z - center;
      const double n = d.norm();
      return n > 0.0 ? Vec(-orient * d / n) : Vec(Vec::Zero());
    }
    case Kind::Parabola: {
      const Vec t = rotated(normal);
      return normal + curvature * (z - center).dot(t) * t;
    }
    case Kind::Quadratic:
      return eval_test(*test, z).grad;
  }
  return Vec::Zero();
}

Hypersurface Hypersurface::negated() const {
  Hypersurface s = *this;
  switch (kind) {
    case Kind::Sphere:
      s.orient = -orient;
      break;
    case Kind::Parabola:
      s.normal = -normal;
      s.curvature = -curvature;
      break;
    case Kind::Quadratic: {
      QuadraticTest q = *test;
      q.c = -q.c;
      q.p = -q.p;
      q.gamma = -q.gamma;
      q.base_scale = -q.base_scale;
      s.test = std::make_shared<const QuadraticTest>(q);
      break;
    }
  }
  return s;
}

double level_difference(const Hypersurface& s, const Vec& z, const Vec& y) {
  switch (s.kind) {
    case Hypersurface::Kind::Sphere:
      return s.orient * ((y - s.center).squaredNorm() - (z - s.center).squaredNorm());
    case Hypersurface::Kind::Parabola:
      return s.value(z) - s.value(y);
    case Hypersurface::Kind::Quadratic:
      return eval_value(*s.test, z) - eval_value(*s.test, y);
  }
  return 0.0;
}

std::vector<double> log_radii(double r_min, double r_max, double ratio) {
  if (!(r_min > 0.0 && r_max > r_min && ratio > 1.0)) throw ConfigError("radius ladder: need 0 < r_min < r_max, ratio > 1");
  std::vector<double> r;
  for (double v = r_min; v <= r_max * (1.0 + 1e-12); v *= ratio) r.push_back(v);
  return r;
}

CurvatureTable::CurvatureTable(const Kernel& K, std::vector<double> radii, std::vector<double> parabola_curvatures,
                               const KappaOptions& opts)
    : radii_(std::move(radii)), parab_k_(std::move(parabola_curvatures)) {
  sphere_.resize(2 * radii_.size());
  parab_.resize(parab_k_.size());
  const std::size_t nr = radii_.size();
  parallel_for(nr + parab_.size(), [&](std::size_t job) {
    if (job < nr) {
      const double r = radii_[job];
      // Anchor at the origin, center on the first axis.
      const Hypersurface s = Hypersurface::sphere(Vec(r, 0.0), r, 1);
      KappaOptions o = opts;
      o.near_curvature = 1.0 / r;
      KappaResult& in = sphere_[2 * job];
      in = kappa(Vec::Zero(), [&s](const Vec& z) { return s.value(z); }, 1.0 / r, K, o);
      // The outward orientation is the negated function: weak and strict sides swap.
      KappaResult& out = sphere_[2 * job + 1];
      out = in;
      out.kappa_star = -in.kappa_sub;
      out.kappa_sub = -in.kappa_star;
      return;
    }
    const std::size_t i = job - nr;
    const Hypersurface p = Hypersurface::parabola(Vec::Zero(), Vec(1.0, 0.0), parab_k_[i]);
    KappaOptions o = opts;
    o.near_curvature = -parab_k_[i];
    parab_[i] = kappa(Vec::Zero(), [&p](const Vec& z) { return p.value(z); }, 2.0 * std::abs(parab_k_[i]), K, o);
  });
}

double CurvatureTable::max_error_bar() const {
  double m = 0.0;
  for (const auto& k : sphere_) m = std::max(m, k.error_bar);
  for (const auto& k : parab_) m = std::max(m, k.error_bar);
  return m;
}

}  // namespace repgames
