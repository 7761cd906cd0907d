#pragma once

#include <vector>

#include "repgames/field.hpp"

namespace repgames {

// Micro time grid t_k = t0 + k dt, k = 0..K with t_K = T.
class TimeGrid {
 public:
  TimeGrid(double t0, double T, double dt);

  double t0() const { return t0_; }
  double T() const { return T_; }
  double dt() const { return dt_; }
  int last() const { return K_; }
  double time(int k) const { return t0_ + k * dt_; }

  // Whole number of micro steps covered by a duration, rounded down, at least 1.
  int steps(double duration) const;

 private:
  double t0_, T_, dt_;
  int K_;
};

// Memo table over (slot, node); slots at or beyond K read the `after` slice.
class ValueFunction {
 public:
  ValueFunction(TimeGrid tg, ScalarField after);

  const TimeGrid& time_grid() const { return tg_; }
  const Grid& grid() const { return after_.grid(); }
  const ScalarField& after() const { return after_; }

  double at(int slot, std::size_t node) const {
    return slot >= tg_.last() ? after_[node] : data_[static_cast<std::size_t>(slot) * n_ + node];
  }
  double* row(int slot) { return data_.data() + static_cast<std::size_t>(slot) * n_; }
  const double* row(int slot) const { return data_.data() + static_cast<std::size_t>(slot) * n_; }
  ScalarField slice(int slot) const;
  void set_slice(int slot, const std::vector<double>& values);

  double min() const;
  double max() const;

 private:
  TimeGrid tg_;
  ScalarField after_;
  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace repgames
