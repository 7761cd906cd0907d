#include "repgames/icf_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include "repgames/error.hpp"
#include "repgames/parallel.hpp"

namespace repgames {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBallSlack = 1e-12;

inline Vec rotated(const Vec& n) { return Vec(-n[1], n[0]); }

// Squared distance range from c to the nodes of a block.
inline double far_d2(const SliceIndex::Block& b, const Vec& c) {
  const double dx = std::max(std::abs(b.lo[0] - c[0]), std::abs(b.hi[0] - c[0]));
  const double dy = std::max(std::abs(b.lo[1] - c[1]), std::abs(b.hi[1] - c[1]));
  return dx * dx + dy * dy;
}
inline double near_d2(const SliceIndex::Block& b, const Vec& c) {
  const double px = std::clamp(c[0], b.lo[0], b.hi[0]);
  const double py = std::clamp(c[1], b.lo[1], b.hi[1]);
  const double dx = px - c[0], dy = py - c[1];
  return dx * dx + dy * dy;
}

enum class Cover { Out, In, Partial };

// Region {z in B_R(y) : phi(z) >= phi(y)} (plus) or <= (minus) restricted to grid nodes.
struct Region {
  Vec y;
  double ball2;
  const Hypersurface* shape;
  Side side;
  // sphere data
  double dy2 = 0.0;
  bool inside = true;

  Region(const Hypersurface& s, const Vec& anchor, Side sd, double R)
      : y(anchor), ball2(R * R * (1.0 + kBallSlack)), shape(&s), side(sd) {
    if (s.kind == Hypersurface::Kind::Sphere) {
      dy2 = (y - s.center).squaredNorm();
      inside = (side == Side::Plus) == (s.orient == 1);
    }
  }

  bool contains(const Vec& z) const {
    if ((z - y).squaredNorm() > ball2) return false;
    if (shape->kind == Hypersurface::Kind::Sphere) {
      const double d2 = (z - shape->center).squaredNorm();
      return inside ? d2 <= dy2 : d2 >= dy2;
    }
    const double diff = level_difference(*shape, z, y);
    return side == Side::Plus ? diff >= 0.0 : diff <= 0.0;
  }

  Cover classify(const SliceIndex::Block& b) const {
    if (near_d2(b, y) > ball2) return Cover::Out;
    const bool ball_in = far_d2(b, y) <= ball2;
    if (shape->kind != Hypersurface::Kind::Sphere) return Cover::Partial;
    const double lo = near_d2(b, shape->center), hi = far_d2(b, shape->center);
    if (inside) {
      if (lo > dy2) return Cover::Out;
      return ball_in && hi <= dy2 ? Cover::In : Cover::Partial;
    }
    if (hi < dy2) return Cover::Out;
    return ball_in && lo >= dy2 ? Cover::In : Cover::Partial;
  }
};

struct Extremum {
  double value;
  std::size_t node;
};

// Minimum of the slice over the region; gives up once it drops to `floor`.
Extremum region_min(const Grid& g, const std::vector<Vec>& nodes, const SliceIndex& S, const Region& reg,
                    double floor) {
  const double* v = S.values();
  Extremum m{kInf, 0};
  for (int bi : S.by_min()) {
    const auto& b = S.blocks()[bi];
    if (b.vmin >= m.value) break;
    const Cover c = reg.classify(b);
    if (c == Cover::Out) continue;
    for (int iy = b.iy0; iy <= b.iy1; ++iy)
      for (int ix = b.ix0; ix <= b.ix1; ++ix) {
        const std::size_t i = g.index(ix, iy);
        if (v[i] < m.value && (c == Cover::In || reg.contains(nodes[i]))) m = {v[i], i};
      }
    if (m.value <= floor) return m;
  }
  return m;
}

Extremum region_max(const Grid& g, const std::vector<Vec>& nodes, const SliceIndex& S, const Region& reg,
                    double ceil) {
  const double* v = S.values();
  Extremum m{-kInf, 0};
  for (int bi : S.by_max()) {
    const auto& b = S.blocks()[bi];
    if (b.vmax <= m.value) break;
    const Cover c = reg.classify(b);
    if (c == Cover::Out) continue;
    for (int iy = b.iy0; iy <= b.iy1; ++iy)
      for (int ix = b.ix0; ix <= b.ix1; ++ix) {
        const std::size_t i = g.index(ix, iy);
        if (v[i] > m.value && (c == Cover::In || reg.contains(nodes[i]))) m = {v[i], i};
      }
    if (m.value >= ceil) return m;
  }
  return m;
}

int slots_for(const TimeGrid& tg, const CutoffParams& cp, double kappa, Side side) {
  const bool paul = side == Side::Plus;
  if (paul ? !(kappa > 0.0) : !(kappa < 0.0)) return -1;
  return tg.steps(icf_time_reset(cp, true, kappa, paul));
}

}  // namespace

void IcfConfig::validate(const Grid& grid) const {
  cutoff().validate();
  if (!(micro_step() <= 0.25 * eps * eps * (1.0 + 1e-12))) throw ConfigError("icf: dt must not exceed eps^2/4");
  for (int a = 0; a < grid.dim(); ++a)
    if (grid.h(a) > 0.5 * eps * (1.0 + 1e-12)) throw ConfigError("icf: grid spacing must not exceed eps/2");
  if (block < 1) throw ConfigError("icf: block must be >= 1");
  if (adaptive_window < 0 || adaptive_tail < 0 || directions < 0 || static_radius_stride < 1)
    throw ConfigError("icf: family sizes must be non-negative");
  if (directions % 2 != 0) throw ConfigError("icf: directions must be even");
  for (double k : parabola_curvatures)
    if (!(k > 0.0)) throw ConfigError("icf: parabola curvatures must be positive");
}

HalfspaceSet halfspace_set(const Grid& grid, std::size_t x, const HypersurfaceChoice& choice, const Kernel& K,
                           const IcfConfig& cfg) {
  const Vec xv = grid.node(x);
  const Hypersurface& s = choice.phi;
  const double d = level_difference(s, xv, choice.anchor);
  if (choice.side == Side::Plus ? d > 0.0 : d < 0.0) throw InputError("halfspace_set: inadmissible choice");
  HalfspaceSet out;
  const double gnorm = s.gradient(choice.anchor).norm();
  bool active = gnorm > cfg.grad_tol;
  if (active) {
    double hint = 0.0;
    switch (s.kind) {
      case Hypersurface::Kind::Sphere:
        hint = 1.0 / std::max((choice.anchor - s.center).norm(), 1e-300);
        break;
      case Hypersurface::Kind::Parabola:
        hint = 2.0 * std::abs(s.curvature);
        break;
      case Hypersurface::Kind::Quadratic:
        hint = 2.0 * level_set_curvature(eval_test(*s.test, choice.anchor));
        break;
    }
    const KappaResult k = kappa(choice.anchor, [&s](const Vec& z) { return s.value(z); }, hint, K, cfg.kappa);
    active = choice.side == Side::Plus ? k.kappa_star > 0.0 : k.kappa_sub < 0.0;
  }
  if (!active) {
    out.nodes = {x};
    return out;
  }
  out.active = true;
  const Region reg(s, choice.anchor, choice.side, K.support());
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (reg.contains(grid.node(i))) out.nodes.push_back(i);
  return out;
}

ShapeReference ShapeReference::none(const Grid& grid) {
  ShapeReference r;
  r.normal_.assign(grid.size(), Vec::Zero());
  r.curv_.assign(grid.size(), 0.0);
  r.valid_.assign(grid.size(), 0);
  return r;
}

ShapeReference ShapeReference::from_field(const ScalarField& field, double width) {
  const Grid& g = field.grid();
  ShapeReference r = none(g);
  const double scale = std::max({1.0, std::abs(field.min()), std::abs(field.max())});
  parallel_for(g.size(), [&](std::size_t i) {
    const Jet j = mollified_jet(field, g.node(i), width);
    const double gn = j.grad.norm();
    if (!(gn > 1e-8 * scale)) return;
    const Vec n = j.grad / gn;
    const Vec t = rotated(n);
    r.normal_[i] = n;
    r.curv_[i] = g.dim() == 2 ? -t.dot(j.hess * t) / gn : 0.0;
    r.valid_[i] = 1;
  });
  return r;
}

ShapeReference ShapeReference::negated() const {
  ShapeReference r = *this;
  for (auto& n : r.normal_) n = -n;
  for (auto& k : r.curv_) k = -k;
  return r;
}

SliceIndex::SliceIndex(const Grid& grid, const double* values, int block) : values_(values) {
  const int nx = grid.n(0), ny = grid.n(1);
  const int by = grid.dim() == 2 ? block : 1;
  for (int y0 = 0; y0 < ny; y0 += by)
    for (int x0 = 0; x0 < nx; x0 += block) {
      Block b;
      b.ix0 = x0;
      b.ix1 = std::min(nx, x0 + block) - 1;
      b.iy0 = y0;
      b.iy1 = std::min(ny, y0 + by) - 1;
      b.lo = grid.node(b.ix0, b.iy0);
      b.hi = grid.node(b.ix1, b.iy1);
      b.vmin = kInf;
      b.vmax = -kInf;
      for (int iy = b.iy0; iy <= b.iy1; ++iy)
        for (int ix = b.ix0; ix <= b.ix1; ++ix) {
          const double v = values[grid.index(ix, iy)];
          b.vmin = std::min(b.vmin, v);
          b.vmax = std::max(b.vmax, v);
        }
      blocks_.push_back(b);
    }
  by_min_.resize(blocks_.size());
  std::iota(by_min_.begin(), by_min_.end(), 0);
  by_max_ = by_min_;
  std::stable_sort(by_min_.begin(), by_min_.end(), [&](int a, int b) { return blocks_[a].vmin < blocks_[b].vmin; });
  std::stable_sort(by_max_.begin(), by_max_.end(), [&](int a, int b) { return blocks_[a].vmax > blocks_[b].vmax; });
}

IndexedValues::IndexedValues(const ValueFunction& f, int block)
    : f_(&f), block_(block), idx_(static_cast<std::size_t>(f.time_grid().last()) + 1) {}

void IndexedValues::build(int slot) {
  const int K = f_->time_grid().last();
  if (slot < 0) throw InputError("indexed values: negative slot");
  if (slot >= K) {
    idx_[K] = std::make_unique<SliceIndex>(f_->grid(), f_->after().values().data(), block_);
    return;
  }
  idx_[slot] = std::make_unique<SliceIndex>(f_->grid(), f_->row(slot), block_);
}

void IndexedValues::build_all() {
  for (int s = 0; s <= f_->time_grid().last(); ++s) build(s);
}

const SliceIndex& IndexedValues::index(int slot) const {
  const std::size_t s = static_cast<std::size_t>(std::min(slot, f_->time_grid().last()));
  if (!idx_[s]) throw InputError("indexed values: slice index not built");
  return *idx_[s];
}

IcfContext::IcfContext(const Grid& grid, const Kernel& K, const IcfConfig& cfg, const TimeGrid& tg)
    : grid_(grid), K_(K), cfg_(cfg), tg_(tg) {
  cfg_.validate(grid_);
  if (K.dim() != grid.dim()) throw ConfigError("icf: kernel and grid dimensions differ");
  const std::vector<double> parab = grid.dim() == 2 ? cfg.parabola_curvatures : std::vector<double>{};
  std::vector<double> signed_k;
  for (double k : parab) {
    signed_k.push_back(k);
    signed_k.push_back(-k);
  }
  table_ = std::make_shared<CurvatureTable>(K, log_radii(cfg.radius_min, cfg.radius_max, cfg.radius_ratio), signed_k,
                                            cfg.kappa);
  anchors_ = grid.offsets_within(cfg.eps);
  const CutoffParams cp = cfg_.cutoff();
  stay_ = tg.steps(cfg.eps * cfg.eps);
  const std::size_t nr = table_->radii().size();
  for (int s = 0; s < 2; ++s) {
    const Side side = s == 0 ? Side::Plus : Side::Minus;
    sphere_off_[s].resize(2 * nr);
    for (std::size_t j = 0; j < nr; ++j)
      for (int o = 0; o < 2; ++o) {
        const KappaResult& k = table_->sphere(j, o);
        sphere_off_[s][2 * j + o] = slots_for(tg, cp, side == Side::Plus ? k.kappa_star : k.kappa_sub, side);
      }
    for (std::size_t j = 0; j < signed_k.size(); ++j) {
      const KappaResult& k = table_->parabola(j);
      parab_off_[s].push_back(slots_for(tg, cp, side == Side::Plus ? k.kappa_star : k.kappa_sub, side));
    }
  }
  if (grid.dim() == 1) {
    if (cfg.directions > 0) dirs_ = {Vec(1.0, 0.0), Vec(-1.0, 0.0)};
  } else {
    const int half = cfg.directions / 2;
    for (int m = 0; m < half; ++m) {
      const double th = std::numbers::pi * m / half;
      dirs_.emplace_back(std::cos(th), std::sin(th));
    }
    for (int m = 0; m < half; ++m) dirs_.push_back(-dirs_[m]);
  }
  for (std::size_t j = 0; j < nr; j += static_cast<std::size_t>(cfg.static_radius_stride)) static_radii_.push_back(j);
  nodes_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) nodes_[i] = grid.node(i);
}

int IcfContext::sphere_offset(std::size_t radius_index, int orient, Side side) const {
  return sphere_off_[side == Side::Plus ? 0 : 1][2 * radius_index + (orient == 1 ? 0 : 1)];
}

int IcfContext::parabola_offset(std::size_t index, Side side) const {
  return parab_off_[side == Side::Plus ? 0 : 1][index];
}

namespace {

// Radii of the fitted family for one orientation at an anchor.
void fitted_radii(const IcfContext& ctx, double signed_curv, int orient, std::vector<std::size_t>& out) {
  out.clear();
  const auto& radii = ctx.table().radii();
  const std::size_t nr = radii.size();
  const IcfConfig& cfg = ctx.config();
  if (orient * signed_curv > 0.0) {
    const double fit = 0.92 / std::abs(signed_curv);
    const auto it = std::lower_bound(radii.begin(), radii.end(), fit);
    for (std::size_t j = static_cast<std::size_t>(it - radii.begin()), c = 0;
         j < nr && c < static_cast<std::size_t>(cfg.adaptive_window); ++j, ++c)
      out.push_back(j);
  }
  const std::size_t tail = std::min(nr, static_cast<std::size_t>(cfg.adaptive_tail));
  for (std::size_t j = nr - tail; j < nr; ++j)
    if (out.empty() || out.back() < j) out.push_back(j);
}

template <Side side>
IcfStep game_reply(const IcfContext& ctx, const IndexedValues& phi, const ShapeReference& ref, int slot,
                   std::size_t x) {
  constexpr bool paul = side == Side::Plus;
  const Grid& g = ctx.grid();
  const ValueFunction& vf = phi.values();
  const auto& nodes = ctx.nodes();
  const Vec& xv = nodes[x];
  const double R = ctx.kernel().support();

  IcfStep best;
  best.slot = slot + ctx.stay_slots();
  best.value = vf.at(best.slot, x);
  best.anchor = x;
  best.reached = x;

  auto consider = [&](const Hypersurface& s, int off, std::size_t yi) {
    if (off < 0) return;
    const Vec& y = nodes[yi];
    const double d = level_difference(s, xv, y);
    if (paul ? d > 0.0 : d < 0.0) return;
    const int ts = slot + off;
    const double bound = vf.at(ts, yi);
    if (paul ? bound <= best.value : bound >= best.value) return;
    const Region reg(s, y, side, R);
    const Extremum e = paul ? region_min(g, nodes, phi.index(ts), reg, best.value)
                            : region_max(g, nodes, phi.index(ts), reg, best.value);
    if (paul ? e.value > best.value : e.value < best.value) {
      best.value = e.value;
      best.active = true;
      best.anchor = yi;
      best.reached = e.node;
      best.slot = ts;
      best.phi = s;
    }
  };

  const IcfConfig& cfg = ctx.config();
  const auto& radii = ctx.table().radii();
  std::vector<std::size_t> fit;
  for (const Offset& o : ctx.anchors()) {
    const auto yo = g.shifted(x, o);
    if (!yo) continue;
    const std::size_t yi = *yo;
    const Vec& y = nodes[yi];
    if (cfg.adaptive && ref.valid(yi)) {
      const Vec& n = ref.normal(yi);
      for (int orient = 1; orient >= -1; orient -= 2) {
        fitted_radii(ctx, ref.curvature(yi), orient, fit);
        for (std::size_t j : fit)
          consider(Hypersurface::sphere(y + orient * radii[j] * n, radii[j], orient),
                   ctx.sphere_offset(j, orient, side), yi);
      }
    }
    for (const Vec& d : ctx.directions()) {
      for (std::size_t j : ctx.static_radii())
        for (int orient = 1; orient >= -1; orient -= 2)
          consider(Hypersurface::sphere(y + radii[j] * d, radii[j], orient), ctx.sphere_offset(j, orient, side), yi);
      const auto& pk = ctx.table().parabola_curvatures();
      for (std::size_t j = 0; j < pk.size(); ++j)
        consider(Hypersurface::parabola(y, d, pk[j]), ctx.parabola_offset(j, side), yi);
    }
  }
  return best;
}

}  // namespace

IcfStep paul_step(const IcfContext& ctx, const IndexedValues& phi, const ShapeReference& ref, int slot,
                  std::size_t x) {
  return game_reply<Side::Plus>(ctx, phi, ref, slot, x);
}

IcfStep carol_step(const IcfContext& ctx, const IndexedValues& phi, const ShapeReference& ref, int slot,
                   std::size_t x) {
  return game_reply<Side::Minus>(ctx, phi, ref, slot, x);
}

std::vector<double> game_step(const IcfContext& ctx, const ScalarField& field, const ShapeReference& reference) {
  if (!(field.grid() == ctx.grid())) throw InputError("game_step: grid mismatch");
  const TimeGrid& tg = ctx.time_grid();
  const int K = tg.last();
  ValueFunction u(tg, field);
  IndexedValues iu(u, ctx.config().block);
  iu.build(K);
  std::vector<double> w(field.size());
  parallel_for(field.size(), [&](std::size_t i) { w[i] = carol_step(ctx, iu, reference, K, i).value; });
  ValueFunction wf(tg, ScalarField(field.grid(), w));
  IndexedValues iw(wf, ctx.config().block);
  iw.build(K);
  std::vector<double> out(field.size());
  parallel_for(field.size(), [&](std::size_t i) { out[i] = paul_step(ctx, iw, reference, K, i).value; });
  return out;
}

IcfSolution solve_icf(const Kernel& K, const ScalarField& u_T, double T, double t_start, const IcfConfig& cfg) {
  const double dt = cfg.micro_step();
  const double t0 = std::min(t_start, T);
  return solve_icf(IcfContext(u_T.grid(), K, cfg, TimeGrid(t0, T, dt)), u_T);
}

IcfSolution solve_icf(const IcfContext& ctx, const ScalarField& u_T) {
  if (!(u_T.grid() == ctx.grid())) throw InputError("solve_icf: grid mismatch");
  const TimeGrid& tg = ctx.time_grid();
  const int K = tg.last();
  const std::size_t n = u_T.size();
  const int block = ctx.config().block;
  const double width = default_mollify_width(u_T.grid());
  const bool fit = ctx.config().adaptive;
  auto reference = [&](const ScalarField& f) {
    return fit ? ShapeReference::from_field(f, width) : ShapeReference::none(f.grid());
  };

  ValueFunction u(tg, u_T);
  IndexedValues iu(u, block);
  iu.build(K);
  std::vector<double> row(n);
  {
    const ShapeReference ref = reference(u_T);
    parallel_for(n, [&](std::size_t i) { row[i] = carol_step(ctx, iu, ref, K, i).value; });
  }
  ValueFunction w(tg, ScalarField(u_T.grid(), row));
  IndexedValues iw(w, block);
  iw.build(K);

  for (int s = K - 1; s >= 0; --s) {
    const int ahead = s + ctx.stay_slots();
    {
      const ShapeReference ref = reference(u.slice(ahead));
      parallel_for(n, [&](std::size_t i) { row[i] = carol_step(ctx, iu, ref, s, i).value; });
      w.set_slice(s, row);
      iw.build(s);
    }
    {
      const ShapeReference ref = reference(w.slice(ahead));
      parallel_for(n, [&](std::size_t i) { row[i] = paul_step(ctx, iw, ref, s, i).value; });
      u.set_slice(s, row);
      iu.build(s);
    }
  }
  return IcfSolution{std::move(u), std::move(w)};
}

std::vector<IcfPlay> trace_icf_play(const IcfContext& ctx, const IcfSolution& sol, int slot, std::size_t x) {
  const int K = ctx.time_grid().last();
  const int block = ctx.config().block;
  IndexedValues iu(sol.u, block), iw(sol.w, block);
  iu.build_all();
  iw.build_all();
  const double width = default_mollify_width(ctx.grid());
  const bool fit = ctx.config().adaptive;
  auto reference = [&](const ValueFunction& f, int s) {
    return fit ? ShapeReference::from_field(f.slice(s), width) : ShapeReference::none(ctx.grid());
  };
  std::vector<IcfPlay> plays;
  while (slot < K) {
    IcfPlay p;
    p.x = x;
    p.paul = paul_step(ctx, iw, reference(sol.w, slot + ctx.stay_slots()), slot, x);
    const int cs = p.paul.slot;
    p.carol = carol_step(ctx, iu, reference(sol.u, cs + ctx.stay_slots()), cs, p.paul.reached);
    plays.push_back(p);
    slot = p.carol.slot;
    x = p.carol.reached;
  }
  return plays;
}

}  // namespace repgames
