#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsw/grid.hpp"
#include "rsw/linear.hpp"
#include "rsw/state.hpp"

namespace rsw {

/// Initial data on the padded grid. Ghost values along EquilibriumHold axes
/// are read from here for the whole run.
struct Frozen {
  Padded h, u, v, b, phi;
};

struct Problem {
  Grid grid;
  Bathymetry bath;
  Params params;
  std::optional<Frozen> frozen;

  const Padded* frozen_h() const { return frozen ? &frozen->h : nullptr; }
  const Padded* frozen_u() const { return frozen ? &frozen->u : nullptr; }
  const Padded* frozen_v() const { return frozen ? &frozen->v : nullptr; }
  const Padded* frozen_b() const { return frozen ? &frozen->b : nullptr; }
  const Padded* frozen_phi() const { return frozen ? &frozen->phi : nullptr; }
};

/// Largest admissible step for state s, already multiplied by cfl_safety.
/// With alpha > 0 the explicit momentum diffusion adds a bound of order
/// dx^(3/2). Returns +inf when no bound is active (state at rest without
/// rotation or diffusion).
/// Throws NonpositiveDt when eta <= 15/8 max h.
double compute_dt(const State& s, const Problem& p);

/// Linear system for phi^{n+1}, one row per cell.
StencilSystem assemble_phi_system(const State& s, const Problem& p, double dt);

/// h = phi / g - b. Throws PositivityFailure listing the cells with h <= 0.
CellField recover_height(const CellField& phi_next, const Bathymetry& bath, double g);

/// q = eta dt (dx phi^{n+1} - omega v^n) and r = eta dt (dy phi^{n+1} + omega u^n).
/// q is filled on cells i in [-1, nx] and r on j in [-1, ny] (the edge
/// averages of the mass flux need one ghost layer).
std::pair<Padded, Padded> stabilisation_fields(const CellField& phi_next, const State& s,
                                               const Problem& p, double dt);

/// F = {{h^{n+1} u^n}} - {{q}} on vertical edges, G likewise on horizontal ones.
std::pair<EdgeField, EdgeField> mass_fluxes(const CellField& h_next, const State& s,
                                            const Padded& q, const Padded& r, const Problem& p);

/// Explicit flux-difference form of the height update.
CellField mass_update(const CellField& h_n, const EdgeField& F, const EdgeField& G, double dt);

/// Upwind edge values of w: left/bottom value when the flux is >= 0.
std::pair<EdgeField, EdgeField> upwind_edge_velocity(const CellField& w, const EdgeField& F,
                                                     const EdgeField& G,
                                                     const Padded* frozen_w = nullptr);

/// Conservative momentum update divided by h^{n+1}.
std::pair<CellField, CellField> momentum_update(const State& s, const CellField& h_next,
                                                const CellField& phi_next, const EdgeField& F,
                                                const EdgeField& G, const Padded& q,
                                                const Padded& r, const Problem& p, double dt);

struct StepReport {
  double dt = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double margin = 0.0;
  /// sum dx dy q^2 and sum dx dy r^2
  double q2 = 0.0, r2 = 0.0;
  double max_abs_q = 0.0, max_abs_r = 0.0;
  double energy_before = 0.0, energy_after = 0.0;
  double min_h = 0.0, max_h = 0.0;
  bool bracket_ok = true;
  int retries = 0;
  /// g/2 sum dx dy (h^{n+1} - h^n)^2
  double height_increment = 0.0;
  /// sum dx dy (1 - zeta)/eta^2 (eta - 3/2 h^{n+1}) (q^2 + r^2)
  double stab_dissipation = 0.0;
  /// Relative residuals of the total momentum balances (periodic grids only).
  double momx_residual = 0.0, momy_residual = 0.0;
  /// max |h from the flux form - h from phi|; negative when not evaluated.
  double mass_mismatch = -1.0;
  /// Which of the checked step conditions failed, empty if none.
  std::vector<std::string> violations;
};

struct AdvanceOptions {
  SolveOptions solver;
  bool check_mass = true;
};

/// One step of fixed size dt. Solver and positivity failures throw; the
/// energy-stability conditions are only recorded in report.violations.
std::pair<State, StepReport> advance(const State& s, const Problem& p, double dt,
                                     const AdvanceOptions& opt = {});

struct StepperOptions {
  SolveOptions solver;
  int max_retries = 3;
  /// Run the flux-form height cross-check every this many steps (1 = always).
  int mass_check_every =
#ifdef NDEBUG
      10;
#else
      1;
#endif
  double energy_slack = 1e-10;
};

class Stepper {
public:
  explicit Stepper(Problem problem, StepperOptions opt = {});

  /// Advance s by min(compute_dt, dt_max), halving on failed step checks.
  StepReport step(State& s, double dt_max = std::numeric_limits<double>::infinity());

  const Problem& problem() const { return problem_; }
  long steps_taken() const { return steps_; }
  void set_initial_energy(double e0) { e0_ = e0; }

private:
  Problem problem_;
  StepperOptions opt_;
  long steps_ = 0;
  std::optional<double> e0_;
};

} // namespace rsw
