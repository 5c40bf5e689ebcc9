#include "rsw/kconv.hpp"

#include <algorithm>
#include <cmath>

#include "rsw/diagnostics.hpp"
#include "rsw/errors.hpp"

namespace rsw {

Snapshot Snapshot::from_state(const State& s) {
  auto m = momenta(s);
  return {s.h, std::move(m.first), std::move(m.second)};
}

Snapshot Snapshot::restricted(const State& s, const Grid& target) {
  const Grid& g = s.grid();
  if (target.nx() <= 0 || target.ny() <= 0 || g.nx() % target.nx() != 0 || g.ny() % target.ny() != 0)
    throw IndivisibleDims("cannot restrict " + std::to_string(g.nx()) + "x" + std::to_string(g.ny()) +
                          " onto " + std::to_string(target.nx()) + "x" + std::to_string(target.ny()));
  const int fx = g.nx() / target.nx(), fy = g.ny() / target.ny();
  Snapshot full = from_state(s);
  return {restrict(full.h, fx, fy), restrict(full.mx, fx, fy), restrict(full.my, fx, fy)};
}

namespace {

void check_members(const SolutionEnsemble& ens) {
  if (ens.members.empty()) throw EmptyEnsemble("ensemble has no members");
  const Grid& g = ens.members.front().h.grid();
  for (const auto& m : ens.members)
    if (!m.h.grid().same_shape(g)) throw GridMismatch("ensemble members live on different grids");
}

} // namespace

Snapshot cesaro_mean(const SolutionEnsemble& ens) {
  check_members(ens);
  const Grid& g = ens.members.front().h.grid();
  Snapshot out{CellField(g), CellField(g), CellField(g)};
  const double w = 1.0 / static_cast<double>(ens.members.size());
  for (int c = 0; c < 3; ++c) {
    CellField& o = out.component(c);
    for (const auto& m : ens.members)
      for (std::size_t k = 0; k < o.size(); ++k) o[k] += m.component(c)[k];
    for (std::size_t k = 0; k < o.size(); ++k) o[k] *= w;
  }
  return out;
}

Snapshot first_variance(const SolutionEnsemble& ens) {
  const Snapshot mean = cesaro_mean(ens);
  const Grid& g = mean.h.grid();
  Snapshot out{CellField(g), CellField(g), CellField(g)};
  const double w = 1.0 / static_cast<double>(ens.members.size());
  for (int c = 0; c < 3; ++c) {
    CellField& o = out.component(c);
    for (const auto& m : ens.members)
      for (std::size_t k = 0; k < o.size(); ++k) o[k] += std::abs(m.component(c)[k] - mean.component(c)[k]);
    for (std::size_t k = 0; k < o.size(); ++k) o[k] *= w;
  }
  return out;
}

double wasserstein1_point(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptyList("wasserstein distance needs two nonempty sample lists");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t n = a.size(), m = b.size();
  if (n == m) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s / static_cast<double>(n);
  }
  // Both quantile functions are piecewise constant with breaks at i/n and
  // j/m; walk the merged breakpoints. Comparing i*m with j*n keeps the
  // ordering exact.
  double s = 0.0, t = 0.0;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    const std::size_t ni = (i + 1) * m, nj = (j + 1) * n;
    const double next = static_cast<double>(std::min(ni, nj)) / static_cast<double>(n * m);
    s += (next - t) * std::abs(a[i] - b[j]);
    t = next;
    if (ni <= nj) ++i;
    if (nj <= ni) ++j;
  }
  return s;
}

std::vector<LadderRow> error_ladder(const std::vector<Snapshot>& runs, const std::vector<int>& ks,
                                    const SolutionEnsemble& ref) {
  if (runs.size() != ks.size()) throw std::invalid_argument("one resolution label per run is required");
  check_members(ref);
  SolutionEnsemble all{runs};
  check_members(all);
  if (!runs.front().h.grid().same_shape(ref.members.front().h.grid()))
    throw GridMismatch("runs and reference live on different grids");

  const Snapshot& uref = ref.members.back();
  const Snapshot ref_mean = cesaro_mean(ref);
  const Snapshot ref_var = first_variance(ref);
  const Grid& g = uref.h.grid();
  const double area = g.cell_area();

  std::vector<LadderRow> rows;
  for (std::size_t n = 0; n < runs.size(); ++n) {
    SolutionEnsemble prefix{std::vector<Snapshot>(runs.begin(), runs.begin() + static_cast<long>(n) + 1)};
    const Snapshot mean = cesaro_mean(prefix);
    const Snapshot var = first_variance(prefix);
    LadderRow total{ks[n], "total"};
    for (int c = 0; c < 3; ++c) {
      LadderRow row{ks[n], kComponentNames[c]};
      row.e1 = l1_error(runs[n].component(c), uref.component(c));
      row.e2 = l1_error(mean.component(c), ref_mean.component(c));
      row.e3 = l1_error(var.component(c), ref_var.component(c));
      double w1 = 0.0;
      std::vector<double> a(prefix.members.size()), b(ref.members.size());
      for (std::size_t k = 0; k < g.cells(); ++k) {
        for (std::size_t q = 0; q < a.size(); ++q) a[q] = prefix.members[q].component(c)[k];
        for (std::size_t q = 0; q < b.size(); ++q) b[q] = ref.members[q].component(c)[k];
        w1 += wasserstein1_point(a, b);
      }
      row.e4 = area * w1;
      total.e1 += row.e1;
      total.e2 += row.e2;
      total.e3 += row.e3;
      total.e4 += row.e4;
      rows.push_back(row);
    }
    rows.push_back(total);
  }
  return rows;
}

} // namespace rsw
