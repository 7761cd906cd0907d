#pragma once

#include <functional>
#include <string>
#include <vector>

#include "repgames/cutoff.hpp"
#include "repgames/time_grid.hpp"

namespace repgames {

struct SpeedField {
  std::string name;
  std::function<double(const Vec&)> v;
  double lipschitz = 0.0;
};

// Registry: const(c), linear (v = x_1), two_zone(w) (+1 left, -1 right, ramp of width w).
SpeedField make_speed(const std::string& spec);

struct EikonalConfig {
  double eps = 0.1;
  double dt = 0.0;  // 0 selects eps^2/4
  CutoffParams cutoff() const { return CutoffParams{eps, 1.5, 0.5}; }
  double micro_step() const { return dt > 0.0 ? dt : 0.25 * eps * eps; }
  void validate(const Grid& grid) const;
};

struct MoveSet {
  std::vector<std::size_t> nodes;
  bool moved = false;
};

// Grid nodes of the closed ball B_eps(x) where +v > 0 (plus) or -v > 0 (minus);
// {x} when there are none.
MoveSet move_set_plus(const Grid& grid, std::size_t x, const std::vector<double>& v, double eps);
MoveSet move_set_minus(const Grid& grid, std::size_t x, const std::vector<double>& v, double eps);

// Move sets with their time offsets in micro steps, precomputed per node.
class EikonalMoves {
 public:
  EikonalMoves(const Grid& grid, const SpeedField& speed, const EikonalConfig& cfg, const TimeGrid& tg);

  struct Choice {
    std::size_t node;
    int offset;
  };
  const std::vector<Choice>& plus(std::size_t x) const { return plus_[x]; }
  const std::vector<Choice>& minus(std::size_t x) const { return minus_[x]; }
  const std::vector<double>& speeds() const { return v_; }

 private:
  std::vector<std::vector<Choice>> plus_, minus_;
  std::vector<double> v_;
};

struct StepChoice {
  double value;
  std::size_t node;
  int slot;
};

// R^eps: max over E+(x) of phi(slot + T_P, x_P). R_eps: min over E-(x).
StepChoice paul_step(const ValueFunction& phi, int slot, std::size_t x, const EikonalMoves& moves);
StepChoice carol_step(const ValueFunction& phi, int slot, std::size_t x, const EikonalMoves& moves);

struct EikonalSolution {
  ValueFunction u;  // value function
  ValueFunction w;  // Carol's inner value R_eps[u]
};

EikonalSolution solve_eikonal(const SpeedField& speed, const ScalarField& u_T, double T, double t_start,
                              const EikonalConfig& cfg);

struct PlayStep {
  int slot;
  std::size_t node;
};

// Greedy optimal play from (slot, x): alternating Paul and Carol positions until time passes T.
std::vector<PlayStep> trace_eikonal_play(const EikonalSolution& sol, const EikonalMoves& moves, int slot,
                                         std::size_t x);

}  // namespace repgames
