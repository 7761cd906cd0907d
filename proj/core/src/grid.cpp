#include "repgames/grid.hpp"

#include <cmath>

#include "repgames/error.hpp"

namespace repgames {

Grid::Grid(int dim, std::array<double, 2> lo, std::array<double, 2> hi, std::array<int, 2> n)
    : dim_(dim), lo_(lo), hi_(hi), n_(n), h_{0.0, 0.0} {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (dim == 1) {
    lo_[1] = 0.0;
    hi_[1] = 0.0;
    n_[1] = 1;
  }
  for (int a = 0; a < dim; ++a) {
    if (n_[a] < 3) throw ConfigError("grid needs at least 3 points per axis");
    if (!(hi_[a] > lo_[a])) throw ConfigError("grid requires hi > lo on every axis");
    h_[a] = (hi_[a] - lo_[a]) / (n_[a] - 1);
  }
}

Grid Grid::line(double lo, double hi, int n) { return Grid(1, {lo, 0.0}, {hi, 0.0}, {n, 1}); }

Grid Grid::square(double lo, double hi, int n) { return Grid(2, {lo, lo}, {hi, hi}, {n, n}); }

Vec Grid::node(std::size_t i) const {
  auto [ix, iy] = multi_index(i);
  return node(ix, iy);
}

bool Grid::contains(const Vec& x) const {
  for (int a = 0; a < dim_; ++a)
    if (x[a] < lo_[a] || x[a] > hi_[a]) return false;
  return true;
}

Vec Grid::clamp(const Vec& x) const {
  Vec c = x;
  for (int a = 0; a < dim_; ++a) c[a] = std::min(std::max(x[a], lo_[a]), hi_[a]);
  if (dim_ == 1) c[1] = 0.0;
  return c;
}

std::size_t Grid::nearest(const Vec& x) const {
  std::array<int, 2> k{0, 0};
  Vec c = clamp(x);
  for (int a = 0; a < dim_; ++a) {
    k[a] = static_cast<int>(std::lround((c[a] - lo_[a]) / h_[a]));
    k[a] = std::min(std::max(k[a], 0), n_[a] - 1);
  }
  return index(k[0], k[1]);
}

std::optional<std::size_t> Grid::shifted(std::size_t i, Offset off) const {
  auto [ix, iy] = multi_index(i);
  int jx = ix + off.dx;
  int jy = iy + off.dy;
  if (jx < 0 || jx >= n_[0] || jy < 0 || jy >= n_[1]) return std::nullopt;
  return index(jx, jy);
}

std::vector<Offset> Grid::offsets_within(double radius) const {
  std::vector<Offset> out;
  const double tol = 1e-9 * h_[0];
  int kx = static_cast<int>(std::floor(radius / h_[0] + 1e-9));
  int ky = dim_ == 2 ? static_cast<int>(std::floor(radius / h_[1] + 1e-9)) : 0;
  for (int dy = -ky; dy <= ky; ++dy)
    for (int dx = -kx; dx <= kx; ++dx) {
      Offset o{dx, dy};
      if (displacement(o).norm() <= radius + tol) out.push_back(o);
    }
  return out;
}

bool Grid::operator==(const Grid& o) const {
  return dim_ == o.dim_ && lo_ == o.lo_ && hi_ == o.hi_ && n_ == o.n_;
}

}  // namespace repgames
