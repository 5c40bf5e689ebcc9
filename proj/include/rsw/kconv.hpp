#pragma once

#include <string>
#include <vector>

#include "rsw/grid.hpp"
#include "rsw/state.hpp"

namespace rsw {

/// Conserved variables (h, h u, h v) of one run on a common comparison grid.
struct Snapshot {
  CellField h, mx, my;

  static Snapshot from_state(const State& s);
  /// Block-averaged onto `target`, which must divide the state's grid.
  static Snapshot restricted(const State& s, const Grid& target);

  const CellField& component(int c) const { return c == 0 ? h : c == 1 ? mx : my; }
  CellField& component(int c) { return c == 0 ? h : c == 1 ? mx : my; }
};

inline constexpr const char* kComponentNames[3] = {"h", "mx", "my"};

/// Ordered runs of successive resolutions, all on one comparison grid.
struct SolutionEnsemble {
  std::vector<Snapshot> members;
};

/// Componentwise mean of the members. Throws EmptyEnsemble.
Snapshot cesaro_mean(const SolutionEnsemble& ens);
/// Mean absolute deviation from the Cesaro mean. Throws EmptyEnsemble.
Snapshot first_variance(const SolutionEnsemble& ens);

/// 1-Wasserstein distance between the empirical measures of two sample
/// lists (the L1 distance of their quantile functions). Throws EmptyList.
double wasserstein1_point(std::vector<double> a, std::vector<double> b);

struct LadderRow {
  int k = 0;
  std::string component;
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
};

/// E1..E4 for each prefix ensemble {runs[0..n]} against the reference
/// ensemble. U_ref is the last reference member. One row per component plus
/// a "total" row per resolution.
std::vector<LadderRow> error_ladder(const std::vector<Snapshot>& runs, const std::vector<int>& ks,
                                    const SolutionEnsemble& ref);

} // namespace rsw
