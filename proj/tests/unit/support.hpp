#pragma once

#include <random>

#include "rsw/grid.hpp"

namespace rsw::testing {

inline CellField random_field(const Grid& g, std::mt19937& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  CellField f(g);
  for (auto& x : f.values()) x = d(rng);
  return f;
}

/// Unit grid [0, nx] x [0, ny] with dx = dy = 1.
inline Grid unit_spacing(int nx, int ny, BoundaryMode bc) { return Grid(nx, ny, 0.0, nx, 0.0, ny, bc); }

} // namespace rsw::testing
