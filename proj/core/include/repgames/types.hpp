#pragma once

#include <Eigen/Core>

namespace repgames {

// Points and vectors live in R^2; 1D problems use the first component only.
using Vec = Eigen::Vector2d;
using Mat = Eigen::Matrix2d;

inline Vec point(double x, double y = 0.0) { return Vec(x, y); }

}  // namespace repgames
