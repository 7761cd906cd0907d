#pragma once

namespace repgames {

// Clamp window [eps^lo_exp, eps^hi_exp] for candidate time increments.
struct CutoffParams {
  double eps = 0.1;
  double lo_exp = 1.5;
  double hi_exp = 0.5;

  void validate() const;
  double floor_value() const;
  double ceiling_value() const;
};

double cutoff(const CutoffParams& params, double r);

// Reset after a move in the eikonal game; `speed` is |v| at the chosen point.
double eikonal_time_reset(const CutoffParams& params, bool moved, double speed);

// Reset in the curvature game. `paul_branch` selects the sign requirement:
// kappa > 0 for Paul, kappa < 0 for Carol.
double icf_time_reset(const CutoffParams& params, bool grad_nonzero, double kappa, bool paul_branch);

}  // namespace repgames
