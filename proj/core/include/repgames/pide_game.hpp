#pragma once

#include <vector>

#include "repgames/levy.hpp"
#include "repgames/nonlinearity.hpp"

namespace repgames {

struct PideConfig {
  double eps = 0.05;
  double alpha = 0.5;
  Grid grid = Grid::line(-1.0, 1.0, 81);
  double mollify_width = 0.0;  // 0 selects two grid spacings
  // Helen's family: perturbations a.(z-x) + g/2 |z-x|^2 of the mollified field
  // with a in {-P..P} p_step per axis and g in {-G..G} gamma_step, plus pure
  // quadratics on the same parameter grids.
  int p_levels = 1;
  double p_step = 0.5;
  int gamma_levels = 1;
  double gamma_step = 0.5;
  bool pure_quadratics = true;
  NonlocalOptions nonlocal;

  double cap() const;
  double width() const;
  void validate(const Nonlinearity& F) const;
};

// Per-point evaluation context: Mark's lattice B_R(x) and cached values.
class MarkStencil {
 public:
  MarkStencil(const ScalarField& U_next, const Vec& x, double trunc_R);
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<double>& next_values() const { return next_values_; }

 private:
  std::vector<Vec> points_;
  std::vector<double> next_values_;
};

// Helen's finite family at x, bound-projected so that sup over B_R(x),
// |D Phi(x)| and |D^2 Phi(x)| stay below eps^-alpha.
std::vector<QuadraticTest> helen_candidates(const std::shared_ptr<const ScalarField>& U_next, const Vec& x,
                                            const PideConfig& cfg, double trunc_R);

// Value shift and scale that bring Phi inside the caps at x.
QuadraticTest project_to_bounds(const QuadraticTest& phi, const Vec& x, const std::vector<Vec>& stencil, double cap);

struct PideStepResult {
  double value = 0.0;
  int best_candidate = -1;
  int best_mark = -1;
};

// max over candidates of min over Mark's lattice of
// U_next(y) + Phi(x) - Phi(y) - eps F(t, x, D Phi(x), D^2 Phi(x), I_R[x, Phi]).
PideStepResult one_step_with(const ScalarField& U_next, double t, const Vec& x, const Nonlinearity& F,
                             const LevyMeasure& m, const PideConfig& cfg, const std::vector<QuadraticTest>& candidates);

double one_step(const std::shared_ptr<const ScalarField>& U_next, double t, const Vec& x, const Nonlinearity& F,
                const LevyMeasure& m, const PideConfig& cfg);

// One application of the scheme at every node.
ScalarField step_field(const std::shared_ptr<const ScalarField>& U_next, double t, const Nonlinearity& F,
                       const LevyMeasure& m, const PideConfig& cfg);

// Slices u(T - k eps), k = 0..K, with K eps = T - t_start.
std::vector<ScalarField> solve_pide(const Nonlinearity& F, const LevyMeasure& m, const ScalarField& u_T, double T,
                                    double t_start, const PideConfig& cfg);

struct ConsistencyPoint {
  double eps = 0.0;
  double scheme = 0.0;      // S[psi](t, x)
  double lower = 0.0;       // psi(x) - eps F(..., I_R[x, psi])
  double residual = 0.0;    // |scheme - lower| / eps
};

// Samples psi on a grid of spacing eps/4 covering B_R(x), applies one step
// with psi added to Helen's family and reports the normalized residual.
std::vector<ConsistencyPoint> consistency_residual(const Nonlinearity& F, const LevyMeasure& m,
                                                   const QuadraticTest& psi, double t, const Vec& x,
                                                   const std::vector<double>& eps_list, const PideConfig& base_cfg);

struct ScoreBoundResult {
  double constant = 0.0;  // smallest C with -eps F <= C eps^gamma over all trials
  double gamma = 0.0;
  int trials = 0;
};

// Random admissible Phi (caps respected on B_R(x)); measures the a priori
// constant of the per-round increment -eps F.
ScoreBoundResult score_bound_check(const Nonlinearity& F, const LevyMeasure& m, double alpha,
                                   const std::vector<double>& eps_list, int trials, std::uint64_t seed);

}  // namespace repgames
