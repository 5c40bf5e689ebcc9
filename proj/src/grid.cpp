#include "rsw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rsw/errors.hpp"

namespace rsw {

std::string_view to_string(BoundaryMode mode) {
  switch (mode) {
  case BoundaryMode::Periodic: return "periodic";
  case BoundaryMode::Extrapolation: return "extrapolation";
  case BoundaryMode::EquilibriumHold: return "equilibrium";
  }
  return "unknown";
}

BoundaryMode parse_boundary_mode(std::string_view text) {
  if (text == "periodic") return BoundaryMode::Periodic;
  if (text == "extrapolation") return BoundaryMode::Extrapolation;
  if (text == "equilibrium" || text == "equilibrium_hold") return BoundaryMode::EquilibriumHold;
  throw ConfigError("unknown boundary mode '" + std::string(text) + "'");
}

Grid::Grid(int nx, int ny, double x0, double x1, double y0, double y1,
           BoundaryMode bc_x, BoundaryMode bc_y)
    : nx_(nx), ny_(ny), x0_(x0), x1_(x1), y0_(y0), y1_(y1),
      dx_((x1 - x0) / nx), dy_((y1 - y0) / ny), bc_x_(bc_x), bc_y_(bc_y) {
  if (nx < 3 || ny < 3)
    throw std::invalid_argument("grid needs at least 3 cells per direction");
  if (!(dx_ > 0.0) || !(dy_ > 0.0))
    throw std::invalid_argument("grid bounds must be increasing");
}

Grid Grid::with_bc(BoundaryMode bc_x, BoundaryMode bc_y) const {
  return Grid(nx_, ny_, x0_, x1_, y0_, y1_, bc_x, bc_y);
}

bool Grid::same_shape(const Grid& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_ && x0_ == other.x0_ && x1_ == other.x1_ &&
         y0_ == other.y0_ && y1_ == other.y1_;
}

CellField::CellField(const Grid& grid, double fill) : grid_(grid), values_(grid.cells(), fill) {}

bool CellField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double CellField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double CellField::min() const { return *std::min_element(values_.begin(), values_.end()); }

EdgeField::EdgeField(const Grid& grid, EdgeOrientation orientation, double fill)
    : grid_(grid), orientation_(orientation) {
  if (orientation == EdgeOrientation::Vertical) {
    wraps_ = grid.bc_x() == BoundaryMode::Periodic;
    line_ = wraps_ ? grid.nx() : grid.nx() + 1;
    values_.assign(static_cast<std::size_t>(line_) * static_cast<std::size_t>(grid.ny()), fill);
  } else {
    wraps_ = grid.bc_y() == BoundaryMode::Periodic;
    line_ = wraps_ ? grid.ny() : grid.ny() + 1;
    values_.assign(static_cast<std::size_t>(line_) * static_cast<std::size_t>(grid.nx()), fill);
  }
}

std::size_t EdgeField::slot(int i, int j) const {
  if (orientation_ == EdgeOrientation::Vertical) {
    const int k = wraps_ ? (i + line_) % line_ : i + 1;
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(line_) + static_cast<std::size_t>(k);
  }
  const int k = wraps_ ? (j + line_) % line_ : j + 1;
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(grid_.nx()) + static_cast<std::size_t>(i);
}

bool EdgeField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

Padded::Padded(int nx, int ny, double fill)
    : nx_(nx), ny_(ny), stride_(nx + 2 * kGhost),
      values_(static_cast<std::size_t>(nx + 2 * kGhost) * static_cast<std::size_t>(ny + 2 * kGhost), fill) {}

CellField Padded::interior(const Grid& grid) const {
  CellField out(grid);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) out(i, j) = (*this)(i, j);
  return out;
}

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }
int clamp_index(int k, int n) { return std::clamp(k, 0, n - 1); }

} // namespace

Padded ghost_closure(const CellField& z, const Padded* frozen) {
  const Grid& g = z.grid();
  const int nx = g.nx(), ny = g.ny(), G = Padded::kGhost;
  const bool hold = g.bc_x() == BoundaryMode::EquilibriumHold || g.bc_y() == BoundaryMode::EquilibriumHold;
  if (hold && frozen == nullptr)
    throw std::invalid_argument("equilibrium-hold closure needs frozen boundary data");
  if (frozen != nullptr && (frozen->nx() != nx || frozen->ny() != ny))
    throw std::invalid_argument("frozen boundary data has the wrong shape");

  Padded p(nx, ny);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) p(i, j) = z(i, j);

  for (int j = 0; j < ny; ++j) {
    for (int s = 1; s <= G; ++s) {
      const int lo = -s, hi = nx - 1 + s;
      switch (g.bc_x()) {
      case BoundaryMode::Periodic:
        p(lo, j) = z(wrap(lo, nx), j);
        p(hi, j) = z(wrap(hi, nx), j);
        break;
      case BoundaryMode::Extrapolation:
        p(lo, j) = z(0, j);
        p(hi, j) = z(nx - 1, j);
        break;
      case BoundaryMode::EquilibriumHold:
        p(lo, j) = (*frozen)(lo, j);
        p(hi, j) = (*frozen)(hi, j);
        break;
      }
    }
  }
  for (int i = -G; i < nx + G; ++i) {
    for (int s = 1; s <= G; ++s) {
      const int lo = -s, hi = ny - 1 + s;
      switch (g.bc_y()) {
      case BoundaryMode::Periodic:
        p(i, lo) = p(i, wrap(lo, ny));
        p(i, hi) = p(i, wrap(hi, ny));
        break;
      case BoundaryMode::Extrapolation:
        p(i, lo) = p(i, clamp_index(lo, ny));
        p(i, hi) = p(i, clamp_index(hi, ny));
        break;
      case BoundaryMode::EquilibriumHold:
        p(i, lo) = (*frozen)(i, lo);
        p(i, hi) = (*frozen)(i, hi);
        break;
      }
    }
  }
  return p;
}

CellField project(const std::function<double(double, double)>& f, const Grid& grid) {
  CellField out(grid);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.xc(i), grid.yc(j));
  return out;
}

namespace {

template <class EdgeFn>
EdgeField edge_op(const CellField& z, EdgeOrientation o, const Padded* frozen, EdgeFn&& fn) {
  const Grid& g = z.grid();
  const Padded p = ghost_closure(z, frozen);
  EdgeField e(g, o);
  if (o == EdgeOrientation::Vertical) {
    const int first = e.wraps() ? 0 : -1;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = first; i < g.nx(); ++i) e(i, j) = fn(p(i, j), p(i + 1, j));
  } else {
    const int first = e.wraps() ? 0 : -1;
    for (int j = first; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) e(i, j) = fn(p(i, j), p(i, j + 1));
  }
  return e;
}

} // namespace

EdgeField avg_edge(const CellField& z, EdgeOrientation o, const Padded* frozen) {
  return edge_op(z, o, frozen, [](double a, double b) { return 0.5 * (a + b); });
}

EdgeField jump_edge(const CellField& z, EdgeOrientation o, const Padded* frozen) {
  return edge_op(z, o, frozen, [](double a, double b) { return b - a; });
}

EdgeField ddx_dual(const CellField& z, const Padded* frozen) {
  const double dx = z.grid().dx();
  return edge_op(z, EdgeOrientation::Vertical, frozen, [dx](double a, double b) { return (b - a) / dx; });
}

EdgeField ddy_dual(const CellField& z, const Padded* frozen) {
  const double dy = z.grid().dy();
  return edge_op(z, EdgeOrientation::Horizontal, frozen, [dy](double a, double b) { return (b - a) / dy; });
}

void ddx_centered(const Padded& z, double dx, int i_lo, int i_hi, Padded& out) {
  const double s = 0.5 / dx;
  const int G = Padded::kGhost;
#pragma omp parallel for schedule(static)
  for (int j = -G; j < z.ny() + G; ++j)
    for (int i = i_lo; i < i_hi; ++i) out(i, j) = (z(i + 1, j) - z(i - 1, j)) * s;
}

void ddy_centered(const Padded& z, double dy, int j_lo, int j_hi, Padded& out) {
  const double s = 0.5 / dy;
  const int G = Padded::kGhost;
#pragma omp parallel for schedule(static)
  for (int j = j_lo; j < j_hi; ++j)
    for (int i = -G; i < z.nx() + G; ++i) out(i, j) = (z(i, j + 1) - z(i, j - 1)) * s;
}

CellField ddx_centered(const CellField& z, const Padded* frozen) {
  const Grid& g = z.grid();
  const Padded p = ghost_closure(z, frozen);
  CellField out(g);
  const double s = 0.5 / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (p(i + 1, j) - p(i - 1, j)) * s;
  return out;
}

CellField ddy_centered(const CellField& z, const Padded* frozen) {
  const Grid& g = z.grid();
  const Padded p = ghost_closure(z, frozen);
  CellField out(g);
  const double s = 0.5 / g.dy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (p(i, j + 1) - p(i, j - 1)) * s;
  return out;
}

} // namespace rsw
