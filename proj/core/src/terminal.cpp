#include "repgames/terminal.hpp"

#include <algorithm>
#include <cmath>

#include "repgames/error.hpp"
#include "repgames/parse.hpp"

namespace repgames {

namespace {

void arity(const CallSpec& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi)
    throw ConfigError("terminal data " + c.name + ": wrong number of arguments");
}

}  // namespace

TerminalData make_terminal(const std::string& spec, int dim) {
  const CallSpec c = parse_call(spec);
  auto norm = [dim](const Vec& x) { return dim == 1 ? std::abs(x[0]) : x.norm(); };
  TerminalData t;
  t.name = spec;
  if (c.name == "zero") {
    arity(c, 0, 0);
    t.f = [](const Vec&) { return 0.0; };
  } else if (c.name == "constant") {
    arity(c, 1, 1);
    const double v = c.args[0];
    t.f = [v](const Vec&) { return v; };
  } else if (c.name == "cone") {
    arity(c, 1, 1);
    const double rho = c.args[0];
    t.f = [rho, norm](const Vec& x) { return rho - norm(x); };
  } else if (c.name == "tent") {
    arity(c, 1, 1);
    const double r = c.args[0];
    t.f = [r, norm](const Vec& x) { return -std::max(0.0, norm(x) - r); };
  } else if (c.name == "affine") {
    arity(c, 1, 3);
    const double a1 = c.args[0], a2 = c.args.size() > 1 ? c.args[1] : 0.0, b = c.args.size() > 2 ? c.args[2] : 0.0;
    t.f = [a1, a2, b](const Vec& x) { return a1 * x[0] + a2 * x[1] + b; };
  } else if (c.name == "quadratic") {
    arity(c, 1, 1);
    const double k = c.args[0];
    t.f = [k, norm](const Vec& x) {
      const double r = norm(x);
      return 0.5 * k * r * r;
    };
  } else if (c.name == "bump") {
    arity(c, 1, 1);
    const double w = c.args[0];
    if (!(w > 0.0)) throw ConfigError("terminal data bump: width must be positive");
    t.f = [w, norm](const Vec& x) {
      const double s = norm(x) / w;
      return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
    };
  } else if (c.name == "gauss") {
    arity(c, 1, 1);
    const double w = c.args[0];
    if (!(w > 0.0)) throw ConfigError("terminal data gauss: width must be positive");
    t.f = [w, norm](const Vec& x) {
      const double s = norm(x) / w;
      return std::exp(-0.5 * s * s);
    };
  } else {
    throw ConfigError("unknown terminal data '" + c.name +
                      "'; registry: zero, constant(c), cone(rho), tent(r), affine(a1[, a2[, b]]), quadratic(c), bump(w), gauss(s)");
  }
  return t;
}

}  // namespace repgames
