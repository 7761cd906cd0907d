#include "repgames/field.hpp"

#include <algorithm>
#include <cmath>

#include "repgames/error.hpp"

namespace repgames {

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InputError("field size does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw InputError("field values must be finite");
}

ScalarField::ScalarField(Grid grid, double constant)
    : ScalarField(grid, std::vector<double>(grid.size(), constant)) {}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(const Vec&)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
  return ScalarField(grid, std::move(v));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

ScalarField ScalarField::shifted(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x += c;
  return ScalarField(grid_, std::move(v));
}

ScalarField ScalarField::negated() const {
  std::vector<double> v = values_;
  for (double& x : v) x = -x;
  return ScalarField(grid_, std::move(v));
}

namespace {

// Cell index and local coordinate along one axis, after clamping into the box.
inline void locate(const Grid& g, int axis, double x, int& cell, double& frac) {
  const int n = g.n(axis);
  double s = (x - g.lo(axis)) / g.h(axis);
  s = std::min(std::max(s, 0.0), static_cast<double>(n - 1));
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-10) s = r;
  cell = std::min(static_cast<int>(s), n - 2);
  frac = s - cell;
}

}  // namespace

double interpolate(const ScalarField& field, const Vec& x) {
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw InputError("interpolate: non-finite point");
  const Grid& g = field.grid();
  int i0;
  double fx;
  locate(g, 0, x[0], i0, fx);
  if (g.dim() == 1) return (1.0 - fx) * field[i0] + fx * field[i0 + 1];
  int j0;
  double fy;
  locate(g, 1, x[1], j0, fy);
  const double v00 = field[g.index(i0, j0)];
  const double v10 = field[g.index(i0 + 1, j0)];
  const double v01 = field[g.index(i0, j0 + 1)];
  const double v11 = field[g.index(i0 + 1, j0 + 1)];
  return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) + fy * ((1.0 - fx) * v01 + fx * v11);
}

double sup_distance(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw InputError("sup_distance: grids differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace repgames
