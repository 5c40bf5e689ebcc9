#pragma once

#include <filesystem>

#include "rsw/scheme.hpp"

namespace rsw {

/// Columns x,y,h,u,v,b,phi,pv, one row per cell in j-major order, written
/// with 17 significant digits so values round-trip exactly.
void write_snapshot_csv(const std::filesystem::path& path, const State& s, const Problem& p);

/// Reads a snapshot written by write_snapshot_csv back onto `grid`.
/// Returns the state (t = 0) and the bathymetry column.
std::pair<State, Bathymetry> read_snapshot_csv(const std::filesystem::path& path, const Grid& grid);

/// Legacy ASCII STRUCTURED_POINTS file with h, u, v, b, phi and pv.
void write_snapshot_vtk(const std::filesystem::path& path, const State& s, const Problem& p);

} // namespace rsw
