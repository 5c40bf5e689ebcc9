#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace rsw {

enum class BoundaryMode {
  Periodic,        // wraparound
  Extrapolation,   // zero-gradient copy of the nearest interior cell
  EquilibriumHold, // ghosts frozen at the initial data
};

std::string_view to_string(BoundaryMode mode);
/// Accepts "periodic", "extrapolation", "equilibrium" (or "equilibrium_hold").
BoundaryMode parse_boundary_mode(std::string_view text);

/// Uniform rectangular mesh of nx by ny primal cells.
///
/// Cell (i, j) has centre (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy) and is stored
/// j-major: linear index j * nx + i. The boundary mode is chosen per axis so
/// that quasi-1D strips can be periodic across their thin direction.
class Grid {
public:
  Grid(int nx, int ny, double x0, double x1, double y0, double y1,
       BoundaryMode bc_x, BoundaryMode bc_y);
  Grid(int nx, int ny, double x0, double x1, double y0, double y1,
       BoundaryMode bc)
      : Grid(nx, ny, x0, x1, y0, y1, bc, bc) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }
  BoundaryMode bc_x() const { return bc_x_; }
  BoundaryMode bc_y() const { return bc_y_; }
  bool periodic() const {
    return bc_x_ == BoundaryMode::Periodic && bc_y_ == BoundaryMode::Periodic;
  }

  std::size_t cells() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }
  double xc(int i) const { return x0_ + (i + 0.5) * dx_; }
  double yc(int j) const { return y0_ + (j + 0.5) * dy_; }

  /// Same geometry with different boundary modes.
  Grid with_bc(BoundaryMode bc_x, BoundaryMode bc_y) const;

  bool same_shape(const Grid& other) const;
  bool operator==(const Grid&) const = default;

private:
  int nx_, ny_;
  double x0_, x1_, y0_, y1_;
  double dx_, dy_;
  BoundaryMode bc_x_, bc_y_;
};

/// Piecewise constant data on primal cells.
class CellField {
public:
  CellField(const Grid& grid, double fill = 0.0);

  const Grid& grid() const { return grid_; }
  int nx() const { return grid_.nx(); }
  int ny() const { return grid_.ny(); }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  double max() const;
  double min() const;

private:
  Grid grid_;
  std::vector<double> values_;
};

enum class EdgeOrientation { Vertical, Horizontal };

/// Data on one family of edges (the dual cells of that direction).
///
/// Vertical edge sigma_{i+1/2, j} is addressed as (i, j) with i in [-1, nx-1];
/// horizontal edge sigma_{i, j+1/2} as (i, j) with j in [-1, ny-1]. Along a
/// periodic axis there are n edges and index -1 aliases n-1; otherwise the two
/// boundary edges are stored too (n + 1 per line).
class EdgeField {
public:
  EdgeField(const Grid& grid, EdgeOrientation orientation, double fill = 0.0);

  const Grid& grid() const { return grid_; }
  EdgeOrientation orientation() const { return orientation_; }
  std::size_t size() const { return values_.size(); }
  bool wraps() const { return wraps_; }

  double& operator()(int i, int j) { return values_[slot(i, j)]; }
  double operator()(int i, int j) const { return values_[slot(i, j)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool all_finite() const;

private:
  std::size_t slot(int i, int j) const;

  Grid grid_;
  EdgeOrientation orientation_;
  bool wraps_;
  int line_;  // edges per line along the orientation's normal direction
  std::vector<double> values_;
};

/// Cell data extended by two ghost layers on every side, addressed with
/// i in [-2, nx+1], j in [-2, ny+1]. Two layers are needed because the
/// composed centered derivative reaches two cells.
class Padded {
public:
  static constexpr int kGhost = 2;

  Padded(int nx, int ny, double fill = 0.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double& operator()(int i, int j) { return values_[slot(i, j)]; }
  double operator()(int i, int j) const { return values_[slot(i, j)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  CellField interior(const Grid& grid) const;

private:
  std::size_t slot(int i, int j) const {
    return static_cast<std::size_t>(j + kGhost) * static_cast<std::size_t>(stride_) +
           static_cast<std::size_t>(i + kGhost);
  }
  int nx_, ny_, stride_;
  std::vector<double> values_;
};

/// Copy z into a padded array and fill the ghosts per the grid's boundary
/// modes. `frozen` supplies ghost values along EquilibriumHold axes and must
/// be non-null there (throws std::invalid_argument otherwise).
Padded ghost_closure(const CellField& z, const Padded* frozen = nullptr);

/// Cell averages of f, approximated by the midpoint rule.
CellField project(const std::function<double(double, double)>& f, const Grid& grid);

// Discrete operators. Boundary values come from ghost_closure(z, frozen).
EdgeField avg_edge(const CellField& z, EdgeOrientation o, const Padded* frozen = nullptr);
EdgeField jump_edge(const CellField& z, EdgeOrientation o, const Padded* frozen = nullptr);
/// (z_{i+1} - z_{i-1}) / (2 dx)
CellField ddx_centered(const CellField& z, const Padded* frozen = nullptr);
CellField ddy_centered(const CellField& z, const Padded* frozen = nullptr);
/// (z_{i+1} - z_i) / dx on vertical edges.
EdgeField ddx_dual(const CellField& z, const Padded* frozen = nullptr);
EdgeField ddy_dual(const CellField& z, const Padded* frozen = nullptr);

// Padded-array kernels used by the scheme.
void ddx_centered(const Padded& z, double dx, int i_lo, int i_hi, Padded& out);
void ddy_centered(const Padded& z, double dy, int j_lo, int j_hi, Padded& out);

} // namespace rsw
