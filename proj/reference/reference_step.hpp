#pragma once

#include "rsw/scheme.hpp"

namespace rsw::reference {

/// One step of size dt computed straight from the update formulas: no
/// assembled matrix, no padded arrays, no threads. Boundary values are looked
/// up cell by cell. The implicit potential is found by lexicographic
/// Gauss-Seidel on the residual of the height update itself.
State step(const State& s, const Problem& p, double dt, double tol = 1e-14, int max_sweeps = 100000);

/// Residual of the implicit height update at cell (i, j) for a trial phi.
double height_residual(const State& s, const Problem& p, double dt, const CellField& phi, int i, int j);

} // namespace rsw::reference
