#include "repgames/eikonal_game.hpp"

#include <cmath>
#include <limits>

#include "repgames/error.hpp"
#include "repgames/parallel.hpp"
#include "repgames/parse.hpp"

namespace repgames {

SpeedField make_speed(const std::string& spec) {
  CallSpec c = parse_call(spec);
  SpeedField s;
  s.name = spec;
  if (c.name == "const") {
    if (c.args.size() != 1) throw ConfigError("const takes one argument");
    const double a = c.args[0];
    s.v = [a](const Vec&) { return a; };
  } else if (c.name == "linear") {
    if (!c.args.empty()) throw ConfigError("linear takes no arguments");
    s.v = [](const Vec& x) { return x[0]; };
    s.lipschitz = 1.0;
  } else if (c.name == "two_zone") {
    const double w = c.args.empty() ? 0.2 : c.args[0];
    if (!(w > 0.0)) throw ConfigError("two_zone ramp width must be positive");
    s.v = [w](const Vec& x) { return std::min(1.0, std::max(-1.0, -x[0] / (0.5 * w))); };
    s.lipschitz = 2.0 / w;
  } else {
    throw ConfigError("unknown speed '" + c.name + "'; registry: const(c), linear, two_zone(w)");
  }
  return s;
}

void EikonalConfig::validate(const Grid& grid) const {
  cutoff().validate();
  if (micro_step() > 0.25 * eps * eps * (1.0 + 1e-9)) throw ConfigError("eikonal: dt must not exceed eps^2/4");
  if (grid.h(0) > 0.25 * eps * (1.0 + 1e-9)) throw ConfigError("eikonal: grid spacing must not exceed eps/4");
}

namespace {

MoveSet move_set(const Grid& grid, std::size_t x, const std::vector<double>& v, double eps, double sign) {
  MoveSet m;
  for (const Offset& o : grid.offsets_within(eps)) {
    auto k = grid.shifted(x, o);
    if (k && sign * v[*k] > 0.0) m.nodes.push_back(*k);
  }
  m.moved = !m.nodes.empty();
  if (!m.moved) m.nodes.push_back(x);
  return m;
}

}  // namespace

MoveSet move_set_plus(const Grid& grid, std::size_t x, const std::vector<double>& v, double eps) {
  return move_set(grid, x, v, eps, 1.0);
}

MoveSet move_set_minus(const Grid& grid, std::size_t x, const std::vector<double>& v, double eps) {
  return move_set(grid, x, v, eps, -1.0);
}

EikonalMoves::EikonalMoves(const Grid& grid, const SpeedField& speed, const EikonalConfig& cfg, const TimeGrid& tg)
    : plus_(grid.size()), minus_(grid.size()), v_(grid.size()) {
  for (std::size_t i = 0; i < grid.size(); ++i) v_[i] = speed.v(grid.node(i));
  const CutoffParams cp = cfg.cutoff();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int side = 0; side < 2; ++side) {
      MoveSet m = side == 0 ? move_set_plus(grid, i, v_, cfg.eps) : move_set_minus(grid, i, v_, cfg.eps);
      auto& out = side == 0 ? plus_[i] : minus_[i];
      for (std::size_t k : m.nodes) {
        const double reset = eikonal_time_reset(cp, m.moved, m.moved ? std::abs(v_[k]) : 0.0);
        out.push_back({k, tg.steps(reset)});
      }
    }
  }
}

StepChoice paul_step(const ValueFunction& phi, int slot, std::size_t x, const EikonalMoves& moves) {
  StepChoice best{-std::numeric_limits<double>::infinity(), x, slot};
  for (const auto& c : moves.plus(x)) {
    const double v = phi.at(slot + c.offset, c.node);
    if (v > best.value) best = {v, c.node, slot + c.offset};
  }
  return best;
}

StepChoice carol_step(const ValueFunction& phi, int slot, std::size_t x, const EikonalMoves& moves) {
  StepChoice best{std::numeric_limits<double>::infinity(), x, slot};
  for (const auto& c : moves.minus(x)) {
    const double v = phi.at(slot + c.offset, c.node);
    if (v < best.value) best = {v, c.node, slot + c.offset};
  }
  return best;
}

EikonalSolution solve_eikonal(const SpeedField& speed, const ScalarField& u_T, double T, double t_start,
                              const EikonalConfig& cfg) {
  const Grid& g = u_T.grid();
  cfg.validate(g);
  const double t0 = std::min(t_start, T);
  TimeGrid tg(t0, T, cfg.micro_step());
  EikonalMoves moves(g, speed, cfg, tg);
  // Beyond T the game is over after Carol's reply: w = min over E-(y) of u_T.
  ValueFunction frozen(tg, u_T);
  std::vector<double> w_after(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w_after[i] = carol_step(frozen, tg.last(), i, moves).value;
  EikonalSolution sol{ValueFunction(tg, u_T), ValueFunction(tg, ScalarField(g, w_after))};
  for (int s = tg.last() - 1; s >= 0; --s) {
    double* wrow = sol.w.row(s);
    parallel_for(g.size(), [&](std::size_t i) { wrow[i] = carol_step(sol.u, s, i, moves).value; });
    double* urow = sol.u.row(s);
    parallel_for(g.size(), [&](std::size_t i) { urow[i] = paul_step(sol.w, s, i, moves).value; });
  }
  return sol;
}

std::vector<PlayStep> trace_eikonal_play(const EikonalSolution& sol, const EikonalMoves& moves, int slot,
                                         std::size_t x) {
  std::vector<PlayStep> out{{slot, x}};
  const int K = sol.u.time_grid().last();
  while (out.back().slot < K) {
    const PlayStep cur = out.back();
    StepChoice p = paul_step(sol.w, cur.slot, cur.node, moves);
    out.push_back({p.slot, p.node});
    StepChoice c = carol_step(sol.u, p.slot, p.node, moves);
    out.push_back({c.slot, c.node});
  }
  return out;
}

}  // namespace repgames
