#include "repgames/cutoff.hpp"

#include <cmath>
#include <limits>

#include "repgames/error.hpp"

namespace repgames {

void CutoffParams::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("cutoff: eps must lie in (0,1)");
  if (!(hi_exp > 0.0 && hi_exp < lo_exp)) throw ConfigError("cutoff: need 0 < hi_exp < lo_exp");
}

double CutoffParams::floor_value() const { return std::pow(eps, lo_exp); }
double CutoffParams::ceiling_value() const { return std::pow(eps, hi_exp); }

double cutoff(const CutoffParams& params, double r) {
  params.validate();
  if (std::isnan(r) || r < 0.0) throw InputError("cutoff: r must be >= 0");
  return std::min(std::max(r, params.floor_value()), params.ceiling_value());
}

double eikonal_time_reset(const CutoffParams& params, bool moved, double speed) {
  if (std::isnan(speed) || speed < 0.0) throw InputError("eikonal_time_reset: negative speed");
  params.validate();
  if (!moved) return params.eps * params.eps;
  const double r = speed > 0.0 ? params.eps / speed : std::numeric_limits<double>::infinity();
  return cutoff(params, r);
}

double icf_time_reset(const CutoffParams& params, bool grad_nonzero, double kappa, bool paul_branch) {
  params.validate();
  const bool sign_ok = paul_branch ? kappa > 0.0 : kappa < 0.0;
  if (!grad_nonzero || !sign_ok) return params.eps * params.eps;
  return cutoff(params, params.eps / std::abs(kappa));
}

}  // namespace repgames
