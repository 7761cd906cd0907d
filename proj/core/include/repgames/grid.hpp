#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "repgames/types.hpp"

namespace repgames {

struct Offset {
  int dx = 0;
  int dy = 0;
};

// Uniform tensor grid on a box, dimension 1 or 2.
// Flat index: i = ix + n[0] * iy.
class Grid {
 public:
  Grid(int dim, std::array<double, 2> lo, std::array<double, 2> hi, std::array<int, 2> n);

  static Grid line(double lo, double hi, int n);
  static Grid square(double lo, double hi, int n);

  int dim() const { return dim_; }
  int n(int axis) const { return n_[axis]; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double h(int axis) const { return h_[axis]; }
  std::size_t size() const { return static_cast<std::size_t>(n_[0]) * n_[1]; }

  std::size_t index(int ix, int iy = 0) const {
    return static_cast<std::size_t>(ix) + static_cast<std::size_t>(n_[0]) * iy;
  }
  std::array<int, 2> multi_index(std::size_t i) const {
    return {static_cast<int>(i % n_[0]), static_cast<int>(i / n_[0])};
  }
  Vec node(std::size_t i) const;
  Vec node(int ix, int iy) const { return Vec(lo_[0] + ix * h_[0], dim_ == 2 ? lo_[1] + iy * h_[1] : 0.0); }

  bool contains(const Vec& x) const;
  Vec clamp(const Vec& x) const;
  std::size_t nearest(const Vec& x) const;

  // Node reached from `i` by a lattice offset, if it stays in the box.
  std::optional<std::size_t> shifted(std::size_t i, Offset off) const;

  // Lattice offsets k with |k h| <= radius (closed ball, tolerance 1e-9 h).
  std::vector<Offset> offsets_within(double radius) const;
  Vec displacement(Offset off) const { return Vec(off.dx * h_[0], dim_ == 2 ? off.dy * h_[1] : 0.0); }

  bool operator==(const Grid& other) const;

 private:
  int dim_;
  std::array<double, 2> lo_;
  std::array<double, 2> hi_;
  std::array<int, 2> n_;
  std::array<double, 2> h_;
};

}  // namespace repgames
