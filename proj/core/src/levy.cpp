#include "repgames/levy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "repgames/error.hpp"
#include "repgames/parse.hpp"

namespace repgames {

LevyMeasure::LevyMeasure(int dim, Kind kind, double alpha, double trunc_R)
    : dim_(dim), kind_(kind), alpha_(alpha), trunc_R_(trunc_R) {
  if (dim != 1 && dim != 2) throw ConfigError("levy measure: dimension must be 1 or 2");
  if (!(trunc_R > 0.0) || !std::isfinite(trunc_R)) throw ConfigError("levy measure: trunc_R must be positive");
}

LevyMeasure LevyMeasure::uniform(int dim, double trunc_R) { return LevyMeasure(dim, Kind::Uniform, 0.0, trunc_R); }

LevyMeasure LevyMeasure::power(int dim, double alpha, double trunc_R) {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw ConfigError("levy measure: power exponent must be positive");
  return LevyMeasure(dim, Kind::Power, alpha, trunc_R);
}

LevyMeasure LevyMeasure::from_name(const std::string& spec, int dim) {
  CallSpec c = parse_call(spec);
  if (c.name == "uniform") {
    if (c.args.size() > 1) throw ConfigError("uniform takes at most one argument (R)");
    return uniform(dim, c.args.empty() ? 1.0 : c.args[0]);
  }
  if (c.name == "power") {
    if (c.args.size() != 1) throw ConfigError("power takes one argument (alpha)");
    return power(dim, c.args[0], 1.0);
  }
  if (c.name == "truncated-power") {
    if (c.args.size() != 2) throw ConfigError("truncated-power takes two arguments (alpha, R)");
    return power(dim, c.args[0], c.args[1]);
  }
  throw ConfigError("unknown measure '" + c.name + "'; registry: uniform, power(alpha), truncated-power(alpha, R)");
}

std::string LevyMeasure::name() const {
  std::ostringstream s;
  if (kind_ == Kind::Uniform)
    s << "uniform(" << trunc_R_ << ")";
  else
    s << "truncated-power(" << alpha_ << ", " << trunc_R_ << ")";
  return s.str();
}

double LevyMeasure::sphere_area() const { return dim_ == 1 ? 2.0 : 2.0 * std::numbers::pi; }

double LevyMeasure::density(double r) const {
  if (r > trunc_R_ || r <= 0.0) return 0.0;
  if (kind_ == Kind::Uniform) return 1.0;
  return std::pow(r, -dim_ - alpha_);
}

double LevyMeasure::radial_second_moment(double delta) const {
  const double d = std::min(delta, trunc_R_);
  if (d <= 0.0) return 0.0;
  if (kind_ == Kind::Uniform) return std::pow(d, dim_ + 2) / (dim_ + 2);
  if (alpha_ >= 2.0) return std::numeric_limits<double>::infinity();
  return std::pow(d, 2.0 - alpha_) / (2.0 - alpha_);
}

double LevyMeasure::mass_between(double a, double b) const {
  b = std::min(b, trunc_R_);
  if (b <= a) return 0.0;
  if (kind_ == Kind::Uniform) return sphere_area() * (std::pow(b, dim_) - std::pow(a, dim_)) / dim_;
  if (a <= 0.0) return std::numeric_limits<double>::infinity();
  return sphere_area() * (std::pow(a, -alpha_) - std::pow(b, -alpha_)) / alpha_;
}

MeasureReport validate_measure(const LevyMeasure& m, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  MeasureReport rep;
  const int N = m.dim();
  auto g = [&](double r) { return std::pow(r, N + 1) * m.density(r); };
  // Second moment on the unit ball, integrated towards 0 on geometric pieces;
  // the increments must shrink fast enough for the tail to be negligible.
  const double top = std::min(1.0, m.trunc_R());
  double total = gauss_kronrod<double, 31>::integrate(g, 0.01 * top, top, 15, 1e-12);
  double prev_inc = 0.0, inc = 0.0, ratio = 1.0;
  double a = 0.01 * top;
  for (int k = 0; k < 8; ++k) {
    const double b = a;
    a = b * 0.01;
    inc = gauss_kronrod<double, 31>::integrate(g, a, b, 15, 1e-12);
    total += inc;
    if (k > 0) ratio = prev_inc > 0.0 ? inc / prev_inc : 0.0;
    prev_inc = inc;
  }
  rep.second_moment = m.sphere_area() * total;
  rep.tail_estimate = ratio < 1.0 ? m.sphere_area() * inc * ratio / (1.0 - ratio)
                                  : std::numeric_limits<double>::infinity();
  if (!(rep.tail_estimate <= tol * std::max(1.0, std::abs(rep.second_moment)))) {
    std::ostringstream s;
    s << "second moment diverges near 0 for " << m.name() << " (successive increment ratio " << ratio << ")";
    rep.diagnostic = s.str();
    return rep;
  }
  if (m.trunc_R() > 1.0) {
    auto f = [&](double r) { return std::pow(r, N - 1) * m.density(r); };
    rep.outer_mass = m.sphere_area() * gauss_kronrod<double, 31>::integrate(f, 1.0, m.trunc_R(), 15, 1e-12);
    if (!std::isfinite(rep.outer_mass)) {
      rep.diagnostic = "mass outside the unit ball is not finite";
      return rep;
    }
  }
  for (double s : {1.0 + 1e-9, 1.5, 4.0, 100.0})
    if (m.density(s * m.trunc_R()) != 0.0) {
      rep.diagnostic = "density does not vanish beyond trunc_R";
      return rep;
    }
  rep.valid = true;
  rep.diagnostic = "ok";
  return rep;
}

Mat inner_second_moment(const LevyMeasure& m, double delta) {
  const double s = m.sphere_area() / m.dim() * m.radial_second_moment(delta);
  Mat M = Mat::Zero();
  M(0, 0) = s;
  if (m.dim() == 2) M(1, 1) = s;
  return M;
}

double default_split(double mollify_width, double h) { return std::max(2.0 * mollify_width, 2.0 * h); }

namespace {

using GL8 = boost::math::quadrature::gauss<double, 8>;

template <class F>
void for_gl8(double a, double b, F&& f) {
  const auto& x = GL8::abscissa();
  const auto& w = GL8::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < x.size(); ++i) {
    f(mid + half * x[i], half * w[i]);
    f(mid - half * x[i], half * w[i]);
  }
}

}  // namespace

double nonlocal_operator(const LevyMeasure& m, const QuadraticTest& phi, const Vec& x, const NonlocalOptions& opts) {
  const double R = m.trunc_R();
  const double h = phi.base ? phi.base->grid().h(0) : 0.0;
  double delta = opts.split;
  if (!(delta > 0.0)) delta = phi.base ? default_split(phi.mollify_width, h) : 0.05 * R;
  delta = std::min(delta, R);
  const Jet j0 = eval_test(phi, x);
  const double inner = 0.5 * (j0.hess.cwiseProduct(inner_second_moment(m, delta))).sum();
  if (delta >= R) return inner;

  double panel = opts.panel;
  if (!(panel > 0.0)) panel = phi.base ? h : (R - delta) / 4.0;
  const int base_panels = std::max(1, static_cast<int>(std::ceil((R - delta) / panel - 1e-9)));
  const double fx = j0.value;

  auto pair_sum = [&](const Vec& z) { return eval_value(phi, x + z) + eval_value(phi, x - z) - 2.0 * fx; };

  auto outer = [&](int level) {
    const int np = base_panels << level;
    double acc = 0.0;
    for (int p = 0; p < np; ++p) {
      const double a = delta + (R - delta) * p / np;
      const double b = delta + (R - delta) * (p + 1) / np;
      for_gl8(a, b, [&](double r, double w) {
        const double f = m.density(r);
        if (m.dim() == 1) {
          acc += w * f * pair_sum(Vec(r, 0.0));
        } else {
          // Half circle of directions; trapezoid is spectral for periodic data.
          const int na = 16 << level;
          double ang = 0.0;
          for (int k = 0; k < na; ++k) {
            const double th = std::numbers::pi * k / na;
            ang += pair_sum(Vec(r * std::cos(th), r * std::sin(th)));
          }
          acc += w * f * r * ang * std::numbers::pi / na;
        }
      });
    }
    return acc;
  };

  double prev = outer(0);
  for (int level = 1; level <= opts.max_refine; ++level) {
    const double cur = outer(level);
    const double est = std::abs(cur - prev);
    if (!std::isfinite(cur)) throw NumericalError("nonlocal_operator: non-finite integrand", est);
    if (est <= opts.rel_tol * std::max(1.0, std::abs(cur + inner))) return inner + cur;
    prev = cur;
  }
  throw NumericalError("nonlocal_operator: quadrature did not converge", std::abs(prev));
}

}  // namespace repgames
