#include "repgames/pide_game.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "repgames/error.hpp"
#include "repgames/parallel.hpp"

namespace repgames {

double PideConfig::cap() const { return std::pow(eps, -alpha); }

double PideConfig::width() const { return mollify_width > 0.0 ? mollify_width : default_mollify_width(grid); }

void PideConfig::validate(const Nonlinearity& F) const {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("pide: eps must lie in (0,1)");
  const double amax = 1.0 / F.max_exponent();
  if (!(alpha > 0.0 && alpha < amax)) {
    std::ostringstream s;
    s << "pide: alpha must lie in (0, " << amax << ") for " << F.name;
    throw ConfigError(s.str());
  }
  if (p_levels < 0 || gamma_levels < 0) throw ConfigError("pide: family levels must be >= 0");
}

MarkStencil::MarkStencil(const ScalarField& U, const Vec& x, double trunc_R) {
  const Grid& g = U.grid();
  const auto offsets = g.offsets_within(trunc_R);
  points_.reserve(offsets.size());
  next_values_.reserve(offsets.size());
  const std::size_t j = g.nearest(x);
  const bool on_node = (g.node(j) - x).norm() <= 1e-12 * g.h(0);
  for (const Offset& o : offsets) {
    if (on_node) {
      if (auto k = g.shifted(j, o)) {
        points_.push_back(g.node(*k));
        next_values_.push_back(U[*k]);
        continue;
      }
      Vec y = g.node(j) + g.displacement(o);
      points_.push_back(y);
      next_values_.push_back(interpolate(U, y));
      continue;
    }
    Vec y = x + g.displacement(o);
    points_.push_back(y);
    next_values_.push_back(interpolate(U, y));
  }
}

namespace {

// Mollified base data at the stencil, shared by all candidates on one base.
struct BaseCache {
  const ScalarField* base = nullptr;
  double width = 0.0;
  std::vector<double> values;
  Jet jet;
  double nonlocal = 0.0;
  bool has_nonlocal = false;
};

class CandidateEvaluator {
 public:
  CandidateEvaluator(const Vec& x, const std::vector<Vec>& points) : x_(x), points_(points) {}

  const BaseCache& base(const QuadraticTest& q) {
    for (auto& b : caches_)
      if (b.base == q.base.get() && b.width == q.mollify_width) return b;
    BaseCache b;
    b.base = q.base.get();
    b.width = q.mollify_width;
    b.values.resize(points_.size());
    for (std::size_t k = 0; k < points_.size(); ++k) b.values[k] = mollified_value(*q.base, points_[k], q.mollify_width);
    b.jet = mollified_jet(*q.base, x_, q.mollify_width);
    caches_.push_back(std::move(b));
    return caches_.back();
  }

  double nonlocal_base(const QuadraticTest& q, const LevyMeasure& m, const NonlocalOptions& opts) {
    base(q);
    for (auto& b : caches_)
      if (b.base == q.base.get() && b.width == q.mollify_width) {
        if (!b.has_nonlocal) {
          b.nonlocal = nonlocal_operator(m, make_base(q), x_, opts);
          b.has_nonlocal = true;
        }
        return b.nonlocal;
      }
    return 0.0;
  }

  // Values at the stencil points and jet at x.
  void evaluate(const QuadraticTest& q, std::vector<double>& vals, Jet& jet) {
    vals.resize(points_.size());
    jet = Jet{};
    const Vec d0 = x_ - q.center;
    jet.value = q.c + q.p.dot(d0) + 0.5 * d0.dot(q.gamma * d0);
    jet.grad = q.p + q.gamma * d0;
    jet.hess = q.gamma;
    const BaseCache* b = nullptr;
    if (q.base && q.base_scale != 0.0) {
      b = &base(q);
      jet.value += q.base_scale * b->jet.value;
      jet.grad += q.base_scale * b->jet.grad;
      jet.hess += q.base_scale * b->jet.hess;
    }
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const Vec d = points_[k] - q.center;
      double v = q.c + q.p.dot(d) + 0.5 * d.dot(q.gamma * d);
      if (b) v += q.base_scale * b->values[k];
      vals[k] = v;
    }
  }

 private:
  static QuadraticTest make_base(const QuadraticTest& q) { return QuadraticTest::mollified(q.base, q.mollify_width); }

  Vec x_;
  const std::vector<Vec>& points_;
  std::vector<BaseCache> caches_;
};

QuadraticTest scale_test(const QuadraticTest& q, double shift, double lambda) {
  QuadraticTest r = q;
  r.c = lambda * (q.c + shift);
  r.p = lambda * q.p;
  r.gamma = lambda * q.gamma;
  r.base_scale = lambda * q.base_scale;
  return r;
}

QuadraticTest project_with(const QuadraticTest& phi, const std::vector<double>& vals, const Jet& jet, double cap) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double shift = 0.0;
  double sup = std::max(std::abs(lo), std::abs(hi));
  if (sup > cap) {
    shift = -0.5 * (lo + hi);
    sup = 0.5 * (hi - lo);
  }
  double lambda = 1.0;
  if (sup > cap) lambda = std::min(lambda, cap / sup);
  const double g = jet.grad.norm();
  if (g > cap) lambda = std::min(lambda, cap / g);
  Eigen::SelfAdjointEigenSolver<Mat> es(jet.hess, Eigen::EigenvaluesOnly);
  const double hn = es.eigenvalues().cwiseAbs().maxCoeff();
  if (hn > cap) lambda = std::min(lambda, cap / hn);
  if (shift == 0.0 && lambda == 1.0) return phi;
  return scale_test(phi, shift, lambda);
}

std::vector<QuadraticTest> raw_family(const std::shared_ptr<const ScalarField>& U, const Vec& x, const PideConfig& cfg) {
  std::vector<QuadraticTest> out;
  const int dim = U->grid().dim();
  const double w = cfg.width();
  out.push_back(QuadraticTest::mollified(U, w));
  std::vector<Vec> ps;
  for (int a = -cfg.p_levels; a <= cfg.p_levels; ++a) {
    if (dim == 1) {
      ps.push_back(Vec(a * cfg.p_step, 0.0));
      continue;
    }
    for (int b = -cfg.p_levels; b <= cfg.p_levels; ++b) ps.push_back(Vec(a * cfg.p_step, b * cfg.p_step));
  }
  std::vector<double> gs;
  for (int g = -cfg.gamma_levels; g <= cfg.gamma_levels; ++g) gs.push_back(g * cfg.gamma_step);
  Mat I = Mat::Identity();
  if (dim == 1) I(1, 1) = 0.0;
  for (const Vec& p : ps)
    for (double g : gs) {
      if (p.isZero() && g == 0.0) continue;
      QuadraticTest q = QuadraticTest::quadratic(x, 0.0, p, g * I);
      q.base = U;
      q.mollify_width = w;
      out.push_back(q);
    }
  if (cfg.pure_quadratics)
    for (const Vec& p : ps)
      for (double g : gs) out.push_back(QuadraticTest::quadratic(x, 0.0, p, g * I));
  return out;
}

std::vector<QuadraticTest> project_family(const std::vector<QuadraticTest>& raw, CandidateEvaluator& ev, double cap) {
  std::vector<QuadraticTest> out;
  out.reserve(raw.size());
  std::vector<double> vals;
  Jet jet;
  for (const auto& q : raw) {
    ev.evaluate(q, vals, jet);
    out.push_back(project_with(q, vals, jet, cap));
  }
  return out;
}

PideStepResult step_with(const MarkStencil& st, CandidateEvaluator& ev, double t, const Vec& x, const Nonlinearity& F,
                         const LevyMeasure& m, const PideConfig& cfg, const std::vector<QuadraticTest>& candidates) {
  PideStepResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const Mat MR = inner_second_moment(m, m.trunc_R());
  const auto& U = st.next_values();
  std::vector<double> vals;
  Jet jet;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const QuadraticTest& q = candidates[c];
    ev.evaluate(q, vals, jet);
    double I = 0.5 * (q.gamma.cwiseProduct(MR)).sum();
    if (q.base && q.base_scale != 0.0) I += q.base_scale * ev.nonlocal_base(q, m, cfg.nonlocal);
    const double f = F(t, x, jet.grad, jet.hess, I);
    if (!std::isfinite(f)) {
      std::ostringstream s;
      s << "pide one_step: F is not finite for candidate " << c << " (c=" << q.c << ", p=" << q.p.transpose()
        << ", base_scale=" << q.base_scale << ")";
      throw NumericalError(s.str());
    }
    const double penalty = cfg.eps * f;
    double worst = std::numeric_limits<double>::infinity();
    int worst_k = -1;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const double b = U[k] + jet.value - vals[k] - penalty;
      if (b < worst) {
        worst = b;
        worst_k = static_cast<int>(k);
      }
    }
    if (worst > best.value) {
      best.value = worst;
      best.best_candidate = static_cast<int>(c);
      best.best_mark = worst_k;
    }
  }
  return best;
}

}  // namespace

QuadraticTest project_to_bounds(const QuadraticTest& phi, const Vec& x, const std::vector<Vec>& stencil, double cap) {
  CandidateEvaluator ev(x, stencil);
  std::vector<double> vals;
  Jet jet;
  ev.evaluate(phi, vals, jet);
  return project_with(phi, vals, jet, cap);
}

std::vector<QuadraticTest> helen_candidates(const std::shared_ptr<const ScalarField>& U, const Vec& x,
                                            const PideConfig& cfg, double trunc_R) {
  MarkStencil st(*U, x, trunc_R);
  CandidateEvaluator ev(x, st.points());
  return project_family(raw_family(U, x, cfg), ev, cfg.cap());
}

PideStepResult one_step_with(const ScalarField& U_next, double t, const Vec& x, const Nonlinearity& F,
                             const LevyMeasure& m, const PideConfig& cfg, const std::vector<QuadraticTest>& candidates) {
  MarkStencil st(U_next, x, m.trunc_R());
  CandidateEvaluator ev(x, st.points());
  return step_with(st, ev, t, x, F, m, cfg, candidates);
}

double one_step(const std::shared_ptr<const ScalarField>& U, double t, const Vec& x, const Nonlinearity& F,
                const LevyMeasure& m, const PideConfig& cfg) {
  MarkStencil st(*U, x, m.trunc_R());
  CandidateEvaluator ev(x, st.points());
  auto family = project_family(raw_family(U, x, cfg), ev, cfg.cap());
  return step_with(st, ev, t, x, F, m, cfg, family).value;
}

ScalarField step_field(const std::shared_ptr<const ScalarField>& U, double t, const Nonlinearity& F,
                       const LevyMeasure& m, const PideConfig& cfg) {
  const Grid& g = U->grid();
  std::vector<double> out(g.size());
  parallel_for(g.size(), [&](std::size_t i) { out[i] = one_step(U, t, g.node(i), F, m, cfg); });
  return ScalarField(g, std::move(out));
}

std::vector<ScalarField> solve_pide(const Nonlinearity& F, const LevyMeasure& m, const ScalarField& u_T, double T,
                                    double t_start, const PideConfig& cfg) {
  cfg.validate(F);
  if (m.dim() != u_T.grid().dim()) throw ConfigError("pide: measure and grid dimensions differ");
  std::vector<ScalarField> slices{u_T};
  if (t_start >= T) return slices;
  const double steps = (T - t_start) / cfg.eps;
  const int K = static_cast<int>(std::lround(steps));
  if (std::abs(steps - K) > 1e-9 * std::max(1.0, steps))
    throw ConfigError("pide: T - t_start must be a multiple of eps");
  for (int k = 1; k <= K; ++k) {
    auto next = std::make_shared<const ScalarField>(slices.back());
    const double t = T - k * cfg.eps;
    slices.push_back(step_field(next, t, F, m, cfg));
  }
  return slices;
}

std::vector<ConsistencyPoint> consistency_residual(const Nonlinearity& F, const LevyMeasure& m,
                                                   const QuadraticTest& psi, double t, const Vec& x,
                                                   const std::vector<double>& eps_list, const PideConfig& base_cfg) {
  std::vector<ConsistencyPoint> out;
  const int dim = m.dim();
  for (double eps : eps_list) {
    PideConfig cfg = base_cfg;
    cfg.eps = eps;
    const double h = eps / 4.0;
    const double reach = m.trunc_R() + 6.0 * h;
    const int half = static_cast<int>(std::ceil(reach / h));
    const int n = 2 * half + 1;
    Grid g = dim == 1 ? Grid(1, {x[0] - half * h, 0.0}, {x[0] + half * h, 0.0}, {n, 1})
                      : Grid(2, {x[0] - half * h, x[1] - half * h}, {x[0] + half * h, x[1] + half * h}, {n, n});
    cfg.grid = g;
    cfg.mollify_width = 0.0;
    auto U = std::make_shared<const ScalarField>(ScalarField::sample(g, [&](const Vec& z) { return eval_value(psi, z); }));
    const Vec xn = g.node(g.nearest(x));
    MarkStencil st(*U, xn, m.trunc_R());
    CandidateEvaluator ev(xn, st.points());
    auto family = project_family(raw_family(U, xn, cfg), ev, cfg.cap());
    family.push_back(project_to_bounds(psi, xn, st.points(), cfg.cap()));
    ConsistencyPoint p;
    p.eps = eps;
    p.scheme = step_with(st, ev, t, xn, F, m, cfg, family).value;
    const Jet j = eval_test(psi, xn);
    const double I = nonlocal_operator(m, psi, xn, cfg.nonlocal);
    p.lower = j.value - eps * F(t, xn, j.grad, j.hess, I);
    p.residual = std::abs(p.scheme - p.lower) / eps;
    out.push_back(p);
  }
  return out;
}

ScoreBoundResult score_bound_check(const Nonlinearity& F, const LevyMeasure& m, double alpha,
                                   const std::vector<double>& eps_list, int trials, std::uint64_t seed) {
  ScoreBoundResult r;
  r.gamma = 1.0 - alpha * F.max_exponent();
  r.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int dim = m.dim();
  const double R = m.trunc_R();
  const Mat MR = inner_second_moment(m, R);
  // Admissible Phi: quadratic with |D Phi(x)|, |D^2 Phi(x)| <= cap and values
  // on B_R(x) bounded by cap; I_R is then exact: 1/2 <Gamma, M_R>.
  for (double eps : eps_list) {
    const double cap = std::pow(eps, -alpha);
    for (int k = 0; k < trials; ++k) {
      Vec p(u(rng), dim == 2 ? u(rng) : 0.0);
      p *= cap / std::max(1.0, p.norm()) * std::abs(u(rng));
      Mat G = Mat::Zero();
      G(0, 0) = u(rng);
      if (dim == 2) {
        G(1, 1) = u(rng);
        G(0, 1) = G(1, 0) = u(rng);
      }
      Eigen::SelfAdjointEigenSolver<Mat> es(G, Eigen::EigenvaluesOnly);
      const double gn = std::max(1e-12, es.eigenvalues().cwiseAbs().maxCoeff());
      G *= cap / gn * std::abs(u(rng));
      // Keep the value bound on B_R(x): |p| R + |G| R^2 / 2 <= cap.
      const double sup = p.norm() * R + 0.5 * G.norm() * R * R;
      if (sup > cap) {
        p *= cap / sup;
        G *= cap / sup;
      }
      const double I = 0.5 * (G.cwiseProduct(MR)).sum();
      const double inc = -eps * F(0.0, Vec::Zero(), p, G, I);
      if (inc > 0.0) r.constant = std::max(r.constant, inc / std::pow(eps, r.gamma));
    }
  }
  return r;
}

}  // namespace repgames
