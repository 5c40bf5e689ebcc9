#include "rsw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "rsw/errors.hpp"
#include "rsw/parallel.hpp"
#include "rsw/scheme.hpp"

namespace rsw {

namespace {

template <class Fn>
double weighted_sum(const Grid& g, Fn&& fn) {
  return g.cell_area() * sum_rows(g.ny(), [&](int j) {
    double s = 0.0;
    for (int i = 0; i < g.nx(); ++i) s += fn(i, j);
    return s;
  });
}

void require_same(const CellField& a, const CellField& b) {
  if (!a.grid().same_shape(b.grid()))
    throw GridMismatch("fields live on different grids (" + std::to_string(a.nx()) + "x" +
                       std::to_string(a.ny()) + " vs " + std::to_string(b.nx()) + "x" +
                       std::to_string(b.ny()) + ")");
}

} // namespace

double total_energy(const State& s, const Bathymetry& bath, double g) {
  return weighted_sum(s.grid(), [&](int i, int j) {
    const double h = s.h(i, j), u = s.u(i, j), v = s.v(i, j);
    return 0.5 * g * h * h + g * bath.b(i, j) * h + 0.5 * h * (u * u + v * v);
  });
}

double total_mass(const State& s) { return integral(s.h); }

std::pair<double, double> total_momentum(const State& s) {
  return {weighted_sum(s.grid(), [&](int i, int j) { return s.h(i, j) * s.u(i, j); }),
          weighted_sum(s.grid(), [&](int i, int j) { return s.h(i, j) * s.v(i, j); })};
}

CellField potential_vorticity(const State& s, double omega, const Padded* frozen_u,
                              const Padded* frozen_v) {
  const CellField dvx = ddx_centered(s.v, frozen_v);
  const CellField duy = ddy_centered(s.u, frozen_u);
  CellField pv(s.grid());
  for (std::size_t k = 0; k < pv.size(); ++k) pv[k] = (omega + dvx[k] - duy[k]) / s.h[k];
  return pv;
}

double l2_error(const CellField& a, const CellField& b) {
  require_same(a, b);
  return std::sqrt(weighted_sum(a.grid(), [&](int i, int j) {
    const double d = a(i, j) - b(i, j);
    return d * d;
  }));
}

double l1_error(const CellField& a, const CellField& b) {
  require_same(a, b);
  return weighted_sum(a.grid(), [&](int i, int j) { return std::abs(a(i, j) - b(i, j)); });
}

double l1_norm(const CellField& a) {
  return weighted_sum(a.grid(), [&](int i, int j) { return std::abs(a(i, j)); });
}

double integral(const CellField& a) {
  return weighted_sum(a.grid(), [&](int i, int j) { return a(i, j); });
}

CellField restrict(const CellField& fine, int fx, int fy) {
  const Grid& g = fine.grid();
  if (fx < 1 || fy < 1 || g.nx() % fx != 0 || g.ny() % fy != 0)
    throw IndivisibleDims("cannot restrict " + std::to_string(g.nx()) + "x" + std::to_string(g.ny()) +
                          " by " + std::to_string(fx) + "x" + std::to_string(fy));
  const Grid coarse(g.nx() / fx, g.ny() / fy, g.x0(), g.x1(), g.y0(), g.y1(), g.bc_x(), g.bc_y());
  CellField out(coarse);
  const double w = 1.0 / (fx * fy);
  for (int J = 0; J < coarse.ny(); ++J)
    for (int I = 0; I < coarse.nx(); ++I) {
      double s = 0.0;
      for (int b = 0; b < fy; ++b)
        for (int a = 0; a < fx; ++a) s += fine(I * fx + a, J * fy + b);
      out(I, J) = s * w;
    }
  return out;
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& resolutions) {
  if (errors.size() != resolutions.size() || errors.size() < 2)
    throw std::invalid_argument("eoc needs matching error and resolution lists of length >= 2");
  for (double e : errors)
    if (!(e > 0.0)) throw NonpositiveError("eoc needs positive errors");
  std::vector<double> out;
  for (std::size_t k = 1; k < errors.size(); ++k)
    out.push_back(std::log(errors[k - 1] / errors[k]) / std::log(resolutions[k] / resolutions[k - 1]));
  return out;
}

WbResiduals wb_residuals(const State& s, const Problem& p) {
  const CellField phi = potential(s, p.bath, p.params.g);
  const CellField dpx = ddx_centered(phi, p.frozen_phi());
  const CellField dpy = ddy_centered(phi, p.frozen_phi());
  const CellField dhy = ddy_centered(s.h, p.frozen_h());
  const double w = p.params.omega;
  WbResiduals r;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    r.q_residual = std::max(r.q_residual, std::abs(dpx[k] - w * s.v[k]));
    r.r_residual = std::max(r.r_residual, std::abs(dpy[k] + w * s.u[k]));
    r.dy_h = std::max(r.dy_h, std::abs(dhy[k]));
    r.max_u = std::max(r.max_u, std::abs(s.u[k]));
  }
  return r;
}

namespace {

LedgerRow snapshot_row(const State& s, const Bathymetry& bath, double g) {
  LedgerRow row;
  row.t = s.t;
  row.energy = total_energy(s, bath, g);
  row.mass = total_mass(s);
  std::tie(row.momx, row.momy) = total_momentum(s);
  row.minh = s.h.min();
  row.maxh = s.h.max();
  return row;
}

} // namespace

void RunLedger::record_initial(const State& s, const Bathymetry& bath, double g) {
  rows_.clear();
  height_sum_ = stab_sum_ = 0.0;
  worst_excess_ = -std::numeric_limits<double>::infinity();
  rows_.push_back(snapshot_row(s, bath, g));
}

void RunLedger::record_step(const State& s, const Bathymetry& bath, double g, const StepReport& rep) {
  if (rows_.empty()) throw std::logic_error("ledger has no initial row");
  LedgerRow row = snapshot_row(s, bath, g);
  row.dt = rep.dt;
  row.q2 = rep.q2;
  row.r2 = rep.r2;
  row.iters = rep.iterations;
  height_sum_ += rep.height_increment;
  stab_sum_ += rep.stab_dissipation;
  worst_excess_ = std::max(worst_excess_, row.energy + height_sum_ + stab_sum_ - initial_energy());
  rows_.push_back(row);
}

const char* RunLedger::csv_header() { return "t,dt,energy,mass,momx,momy,minh,maxh,q2,r2,iters"; }

void RunLedger::write_csv(std::ostream& out) const {
  out << csv_header() << '\n';
  char buf[512];
  for (const auto& r : rows_) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t,
                  r.dt, r.energy, r.mass, r.momx, r.momy, r.minh, r.maxh, r.q2, r.r2, r.iters);
    out << buf;
  }
}

} // namespace rsw
