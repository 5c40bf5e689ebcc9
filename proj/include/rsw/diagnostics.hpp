#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rsw/grid.hpp"
#include "rsw/state.hpp"

namespace rsw {

struct Problem;
struct StepReport;

/// sum dx dy [g h^2 / 2 + g b h + h (u^2 + v^2) / 2]
double total_energy(const State& s, const Bathymetry& bath, double g);
double total_mass(const State& s);
/// (sum dx dy h u, sum dx dy h v)
std::pair<double, double> total_momentum(const State& s);

/// (omega + dx v - dy u) / h with centered differences.
CellField potential_vorticity(const State& s, double omega, const Padded* frozen_u = nullptr,
                              const Padded* frozen_v = nullptr);

/// sqrt(sum dx dy (a - b)^2). Throws GridMismatch.
double l2_error(const CellField& a, const CellField& b);
/// sum dx dy |a - b|. Throws GridMismatch.
double l1_error(const CellField& a, const CellField& b);
double l1_norm(const CellField& a);
/// sum dx dy a
double integral(const CellField& a);

/// Block average by fx in x and fy in y. Throws IndivisibleDims.
CellField restrict(const CellField& fine, int fx, int fy);
inline CellField restrict(const CellField& fine, int factor) { return restrict(fine, factor, factor); }

/// EOC_k = log(e_{k-1}/e_k) / log(r_k/r_{k-1}), one entry per refinement.
/// Throws NonpositiveError for non-positive errors and std::invalid_argument
/// for mismatched or too short lists.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& resolutions);

struct WbResiduals {
  double q_residual = 0.0;  // max |dx phi - omega v|
  double r_residual = 0.0;  // max |dy phi + omega u|
  double dy_h = 0.0;        // max |dy h|
  double max_u = 0.0;       // max |u|
};

/// Residuals of the discrete x-jet conditions.
WbResiduals wb_residuals(const State& s, const Problem& p);

struct LedgerRow {
  double t = 0.0, dt = 0.0, energy = 0.0, mass = 0.0, momx = 0.0, momy = 0.0;
  double minh = 0.0, maxh = 0.0, q2 = 0.0, r2 = 0.0;
  int iters = 0;
};

/// Per-step diagnostics of a run, plus the running sums of the global
/// energy estimate.
class RunLedger {
public:
  void record_initial(const State& s, const Bathymetry& bath, double g);
  void record_step(const State& s, const Bathymetry& bath, double g, const StepReport& rep);

  const std::vector<LedgerRow>& rows() const { return rows_; }
  double initial_energy() const { return rows_.empty() ? 0.0 : rows_.front().energy; }
  double height_increment_sum() const { return height_sum_; }
  double stab_dissipation_sum() const { return stab_sum_; }
  /// max over recorded steps of E^n + accumulated sums - E^0 (<= 0 when the
  /// global estimate holds).
  double worst_global_excess() const { return worst_excess_; }

  void write_csv(std::ostream& out) const;
  static const char* csv_header();

private:
  std::vector<LedgerRow> rows_;
  double height_sum_ = 0.0, stab_sum_ = 0.0;
  double worst_excess_ = -std::numeric_limits<double>::infinity();
};

} // namespace rsw
