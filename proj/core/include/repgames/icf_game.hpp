#pragma once

#include <memory>
#include <vector>

#include "repgames/cutoff.hpp"
#include "repgames/shapes.hpp"
#include "repgames/time_grid.hpp"

namespace repgames {

struct IcfConfig {
  double eps = 0.05;
  double dt = 0.0;  // 0 selects eps^2/4
  // Sphere radii ladder shared by all choice families.
  double radius_min = 0.05;
  double radius_max = 100.0;
  double radius_ratio = 1.05;
  // Spheres fitted to a reference slice: radii near the osculating radius plus the largest ones.
  bool adaptive = true;
  int adaptive_window = 12;
  int adaptive_tail = 3;
  // Fixed family: spheres through the anchor along `directions` normals, every
  // `static_radius_stride`-th radius, and parabolas with these curvatures (both signs).
  int directions = 8;
  int static_radius_stride = 16;
  std::vector<double> parabola_curvatures = {1.0, 4.0};
  KappaOptions kappa;
  int block = 4;
  double grad_tol = 1e-8;

  CutoffParams cutoff() const { return CutoffParams{eps, 1.5, 0.5}; }
  double micro_step() const { return dt > 0.0 ? dt : 0.25 * eps * eps; }
  void validate(const Grid& grid) const;
};

enum class Side { Plus, Minus };

struct HypersurfaceChoice {
  Vec anchor = Vec::Zero();
  Hypersurface phi;
  Side side = Side::Plus;
};

struct HalfspaceSet {
  std::vector<std::size_t> nodes;
  bool active = false;
};

// Grid nodes of {z in B_R(y) : phi(z) >= phi(y)} (plus) or <= (minus) when the
// choice is active, otherwise {x}. Throws InputError for an inadmissible choice.
HalfspaceSet halfspace_set(const Grid& grid, std::size_t x, const HypersurfaceChoice& choice, const Kernel& K,
                           const IcfConfig& cfg);

// Orientation of level sets read from a reference slice: unit gradient and the
// signed curvature of the superlevel set (positive when it is locally convex).
class ShapeReference {
 public:
  static ShapeReference none(const Grid& grid);
  static ShapeReference from_field(const ScalarField& field, double width);

  bool valid(std::size_t i) const { return valid_[i] != 0; }
  const Vec& normal(std::size_t i) const { return normal_[i]; }
  double curvature(std::size_t i) const { return curv_[i]; }
  ShapeReference negated() const;

 private:
  std::vector<Vec> normal_;
  std::vector<double> curv_;
  std::vector<char> valid_;
};

// Per-slice blocks of nodes with their value range, sorted for extremum scans.
class SliceIndex {
 public:
  SliceIndex(const Grid& grid, const double* values, int block);

  struct Block {
    int ix0, ix1, iy0, iy1;
    Vec lo, hi;
    double vmin, vmax;
  };
  const double* values() const { return values_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<int>& by_min() const { return by_min_; }
  const std::vector<int>& by_max() const { return by_max_; }

 private:
  const double* values_;
  std::vector<Block> blocks_;
  std::vector<int> by_min_, by_max_;
};

// A value function with a slice index per slot; slots at or beyond K share the after slice.
class IndexedValues {
 public:
  IndexedValues(const ValueFunction& f, int block);
  const ValueFunction& values() const { return *f_; }
  void build(int slot);
  void build_all();
  const SliceIndex& index(int slot) const;

 private:
  const ValueFunction* f_;
  int block_;
  std::vector<std::unique_ptr<SliceIndex>> idx_;
};

// Everything that depends only on the grid, kernel and configuration.
class IcfContext {
 public:
  IcfContext(const Grid& grid, const Kernel& K, const IcfConfig& cfg, const TimeGrid& tg);

  const Grid& grid() const { return grid_; }
  const Kernel& kernel() const { return K_; }
  const IcfConfig& config() const { return cfg_; }
  const TimeGrid& time_grid() const { return tg_; }
  const CurvatureTable& table() const { return *table_; }
  const std::vector<Offset>& anchors() const { return anchors_; }
  const std::vector<Vec>& directions() const { return dirs_; }
  const std::vector<std::size_t>& static_radii() const { return static_radii_; }
  const std::vector<Vec>& nodes() const { return nodes_; }
  int stay_slots() const { return stay_; }

  // Micro-step offsets of the time reset, or -1 when the choice is inactive for that player.
  int sphere_offset(std::size_t radius_index, int orient, Side side) const;
  int parabola_offset(std::size_t index, Side side) const;

 private:
  Grid grid_;
  Kernel K_;
  IcfConfig cfg_;
  TimeGrid tg_;
  std::shared_ptr<const CurvatureTable> table_;
  std::vector<Offset> anchors_;
  std::vector<Vec> dirs_;
  std::vector<std::size_t> static_radii_;
  std::vector<Vec> nodes_;
  std::vector<int> sphere_off_[2];
  std::vector<int> parab_off_[2];
  int stay_ = 1;
};

struct IcfStep {
  double value = 0.0;
  bool active = false;
  std::size_t anchor = 0;   // x_P (Paul) or x_C (Carol)
  std::size_t reached = 0;  // argmin (Paul) or argmax (Carol) over the region
  int slot = 0;             // slot of the value read
  Hypersurface phi;
};

// R^eps: max over admissible plus choices of the min over their region of phi(slot + T_P, .).
IcfStep paul_step(const IcfContext& ctx, const IndexedValues& phi, const ShapeReference& ref, int slot,
                  std::size_t x);
// R_eps: min over admissible minus choices of the max over their region of phi(slot + T_C, .).
IcfStep carol_step(const IcfContext& ctx, const IndexedValues& phi, const ShapeReference& ref, int slot,
                   std::size_t x);

struct IcfSolution {
  ValueFunction u;
  ValueFunction w;  // Carol's inner value R_eps[u]
};

// One application of R^eps o R_eps on a field frozen in time: both steps read
// `field` at every future slot and the choice families are fitted to `reference`.
std::vector<double> game_step(const IcfContext& ctx, const ScalarField& field, const ShapeReference& reference);

IcfSolution solve_icf(const Kernel& K, const ScalarField& u_T, double T, double t_start, const IcfConfig& cfg);
IcfSolution solve_icf(const IcfContext& ctx, const ScalarField& u_T);

struct IcfPlay {
  std::size_t x;
  IcfStep paul;
  IcfStep carol;
};

// Optimal Paul replies from (slot, x) followed by Carol's replies, until time passes T.
std::vector<IcfPlay> trace_icf_play(const IcfContext& ctx, const IcfSolution& sol, int slot, std::size_t x);

}  // namespace repgames
