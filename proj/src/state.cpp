#include "rsw/state.hpp"

#include <cmath>
#include <stdexcept>

namespace rsw {

void validate(const Params& p) {
  if (!(p.g > 0.0)) throw std::invalid_argument("g must be positive");
  if (!std::isfinite(p.omega)) throw std::invalid_argument("omega must be finite");
  if (!(p.eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(p.zeta > 0.0 && p.zeta < 1.0)) throw std::invalid_argument("zeta must lie in (0, 1)");
  if (!(p.alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (!(p.cfl_safety > 0.0 && p.cfl_safety <= 1.0))
    throw std::invalid_argument("cfl_safety must lie in (0, 1]");
}

double default_eta(const CellField& h0) { return 1.9 * h0.max(); }

CellField potential(const State& s, const Bathymetry& bath, double g) {
  CellField phi(s.grid());
  const std::size_t n = phi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) phi[k] = g * (s.h[k] + bath.b[k]);
  return phi;
}

std::pair<CellField, CellField> momenta(const State& s) {
  CellField mx(s.grid()), my(s.grid());
  const std::size_t n = mx.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    mx[k] = s.h[k] * s.u[k];
    my[k] = s.h[k] * s.v[k];
  }
  return {std::move(mx), std::move(my)};
}

} // namespace rsw
