#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsw/scheme.hpp"

namespace rsw {

using PointFn = std::function<double(double, double)>;

/// One experiment of the catalog: geometry, physics and initial data.
struct CaseSpec {
  std::string name;
  std::string description;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 100, ny = 100;
  /// Quasi-1D: run as an nx by 3 strip, periodic in y, with y-invariant data.
  bool strip = false;
  BoundaryMode bc = BoundaryMode::Periodic;
  double g = 1.0, omega = 1.0, alpha = 0.0, t_final = 1.0;
  /// eta = eta_factor * max h0 unless the run overrides eta.
  double eta_factor = 1.9;
  PointFn h, u, v, b;
  /// Replace v by dx phi / omega on the grid so the discrete jet balance
  /// holds to round-off rather than to truncation error.
  bool discrete_jet = false;
  /// The initial data is an exact steady state.
  bool steady = false;
  /// Exact (h, u, v) at time t, when known.
  std::function<std::array<double, 3>(double t, double x, double y)> exact;
};

const std::vector<CaseSpec>& case_catalog();
/// Throws UnknownCase.
const CaseSpec& find_case(const std::string& name);

struct CaseOverrides {
  std::optional<int> nx, ny;
  std::optional<double> g, omega, eta, zeta, alpha, cfl_safety;
  std::optional<BoundaryMode> bc;
};

struct Setup {
  std::string name;
  Problem problem;
  State state;
  double t_final = 0.0;
};

/// Grid, initial state and parameters of a catalog case.
Setup build_case(const std::string& name, const CaseOverrides& ov = {});

/// Exact solution on the setup's grid at time t. Empty if the case has none.
std::optional<State> exact_state(const Setup& setup, double t);

} // namespace rsw
