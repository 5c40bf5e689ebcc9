#pragma once

#include <utility>

#include "rsw/grid.hpp"

namespace rsw {

struct Params {
  double g = 1.0;
  double omega = 1.0;
  /// Stabilisation strength, in height units. Must exceed 15/8 max h.
  double eta = 1.0;
  double zeta = 0.9;
  /// Momentum diffusion strength; 0 disables it.
  double alpha = 0.0;
  double cfl_safety = 0.9;
};

/// Throws std::invalid_argument on out-of-range entries.
void validate(const Params& p);

/// The stabilisation default used when a run does not set eta explicitly.
double default_eta(const CellField& h0);

struct State {
  CellField h, u, v;
  double t = 0.0;

  explicit State(const Grid& grid) : h(grid), u(grid), v(grid) {}
  State(CellField h_, CellField u_, CellField v_, double t_ = 0.0)
      : h(std::move(h_)), u(std::move(u_)), v(std::move(v_)), t(t_) {}

  const Grid& grid() const { return h.grid(); }
};

struct Bathymetry {
  CellField b;
};

/// phi = g (h + b)
CellField potential(const State& s, const Bathymetry& bath, double g);
/// (h u, h v)
std::pair<CellField, CellField> momenta(const State& s);

} // namespace rsw
