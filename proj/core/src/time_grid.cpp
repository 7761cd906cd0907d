#include "repgames/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "repgames/error.hpp"

namespace repgames {

TimeGrid::TimeGrid(double t0, double T, double dt) : t0_(t0), T_(T), dt_(dt), K_(0) {
  if (!(dt > 0.0)) throw ConfigError("time grid: dt must be positive");
  if (t0 > T) throw ConfigError("time grid: t0 must not exceed T");
  const double k = (T - t0) / dt;
  K_ = static_cast<int>(std::lround(k));
  if (std::abs(k - K_) > 1e-6) throw ConfigError("time grid: dt must divide T - t0");
}

int TimeGrid::steps(double duration) const {
  return std::max(1, static_cast<int>(std::floor(duration / dt_ + 1e-9)));
}

ValueFunction::ValueFunction(TimeGrid tg, ScalarField after)
    : tg_(tg), after_(std::move(after)), n_(after_.size()), data_(static_cast<std::size_t>(tg.last()) * n_, 0.0) {}

ScalarField ValueFunction::slice(int slot) const {
  if (slot >= tg_.last()) return after_;
  return ScalarField(grid(), std::vector<double>(row(slot), row(slot) + n_));
}

void ValueFunction::set_slice(int slot, const std::vector<double>& values) {
  if (values.size() != n_) throw InputError("value function: slice size mismatch");
  if (slot < 0 || slot >= tg_.last()) throw InputError("value function: slot out of range");
  std::copy(values.begin(), values.end(), row(slot));
}

double ValueFunction::min() const {
  double m = after_.min();
  for (double v : data_) m = std::min(m, v);
  return m;
}

double ValueFunction::max() const {
  double m = after_.max();
  for (double v : data_) m = std::max(m, v);
  return m;
}

}  // namespace repgames
