#pragma once

#include <functional>
#include <string>

#include "repgames/types.hpp"

namespace repgames {

struct TerminalData {
  std::string name;
  std::function<double(const Vec&)> f;
};

// Registry: zero, constant(c), cone(rho) = rho - |x|, tent(r) = -max(0, |x| - r),
// affine(a1[, a2[, b]]), quadratic(c) = c/2 |x|^2, bump(w) = smooth bump of radius w,
// gauss(s) = exp(-|x|^2 / 2s^2).
// Throws ConfigError naming the registry for unknown names.
TerminalData make_terminal(const std::string& spec, int dim);

}  // namespace repgames
