#pragma once

#include <functional>
#include <vector>

#include "repgames/grid.hpp"

namespace repgames {

// Grid-sampled function on a box. Outside the box the value of the nearest
// boundary point is used (constant continuation).
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double constant);

  static ScalarField sample(const Grid& grid, const std::function<double(const Vec&)>& f);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double min() const;
  double max() const;

  ScalarField shifted(double c) const;
  ScalarField negated() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Multilinear interpolation, exact at nodes, constant continuation outside.
double interpolate(const ScalarField& field, const Vec& x);

double sup_distance(const ScalarField& a, const ScalarField& b);

}  // namespace repgames
