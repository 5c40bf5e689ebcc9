// Acceptance run: executes the full experiment set once, checks every step
// through hooks, and prints one PASS/FAIL line per criterion.
//
//   rsw_acceptance            all criteria
//   rsw_acceptance 1 7 11     only the listed criteria (and the runs they need)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rsw/diagnostics.hpp"
#include "rsw/driver.hpp"
#include "rsw/errors.hpp"

using namespace rsw;

namespace {

constexpr double kWbTol = 1e-10;
constexpr double kEnergySlack = 1e-10;
constexpr double kMassTol = 1e-11;
constexpr double kMomentumTol = 1e-10;
constexpr double kEocMin = 0.9;
constexpr double kRateLo = 1.7, kRateHi = 2.3;
constexpr double kStabTol = 1e-12;
constexpr double kSolverTol = 1e-12;
constexpr double kDay = 86400.0;

/// Everything observed during one run, from the states alone where possible.
struct Track {
  std::string label;
  bool periodic = false;
  std::string error;  // non-empty if the run threw
  long steps = 0;
  double seconds = 0.0;

  long bracket_violations = 0;
  double min_h = std::numeric_limits<double>::infinity();
  long energy_violations = 0;
  double worst_energy_rise = -std::numeric_limits<double>::infinity();  // relative to |E0|
  double e0 = 0.0;
  double mass0 = 0.0, worst_mass_drift = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_residual = 0.0;
  double max_q = 0.0, max_r = 0.0;
  double max_mom_residual = 0.0;
  double height_sum = 0.0, stab_sum = 0.0;
  double worst_sums = -std::numeric_limits<double>::infinity();    // (sums - E0)/|E0|
  double worst_excess = -std::numeric_limits<double>::infinity();  // (E^n + sums - E0)/|E0|

  std::optional<RunResult> result;
};

double centered(const CellField& f, int i, int j, int di, int dj, double h) {
  const Grid& g = f.grid();
  const int nx = g.nx(), ny = g.ny();
  const auto at = [&](int a, int b) { return f((a % nx + nx) % nx, (b % ny + ny) % ny); };
  return (at(i + di, j + dj) - at(i - di, j - dj)) / (2.0 * h);
}

/// Relative residual of the discrete total x and y momentum balances on a
/// periodic grid with flat bottom and no momentum diffusion. Pressure and
/// flux terms must cancel in the sum, leaving only the Coriolis exchange.
double momentum_ledger(const State& a, const State& b, const Problem& p, double dt) {
  const Grid& g = p.grid;
  const double gg = p.params.g, w = p.params.omega, ed = p.params.eta * dt, area = g.cell_area();
  CellField phi(g);
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = gg * (b.h[k] + p.bath.b[k]);
  double dmx = 0, dmy = 0, srcx = 0, srcy = 0, scx = 0, scy = 0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double px = centered(phi, i, j, 1, 0, g.dx()), py = centered(phi, i, j, 0, 1, g.dy());
      const double q = ed * (px - w * a.v(i, j)), r = ed * (py + w * a.u(i, j));
      const double h1 = b.h(i, j);
      const double bx = centered(p.bath.b, i, j, 1, 0, g.dx()), by = centered(p.bath.b, i, j, 0, 1, g.dy());
      dmx += h1 * b.u(i, j) - a.h(i, j) * a.u(i, j);
      dmy += h1 * b.v(i, j) - a.h(i, j) * a.v(i, j);
      srcx += -gg * h1 * bx + w * h1 * a.v(i, j) - w * r;
      srcy += -gg * h1 * by - w * h1 * a.u(i, j) + w * q;
      scx += std::abs(h1 * b.u(i, j)) + std::abs(a.h(i, j) * a.u(i, j)) +
             dt * (std::abs(h1 * px) + std::abs(w * h1 * a.v(i, j)) + std::abs(w * r));
      scy += std::abs(h1 * b.v(i, j)) + std::abs(a.h(i, j) * a.v(i, j)) +
             dt * (std::abs(h1 * py) + std::abs(w * h1 * a.u(i, j)) + std::abs(w * q));
    }
  const double rx = std::abs(area * dmx - dt * area * srcx) / (area * scx);
  const double ry = std::abs(area * dmy - dt * area * srcy) / (area * scy);
  return std::max(rx, ry);
}

using StepCheck = std::function<void(const State&, const State&, const StepReport&)>;

Track run_tracked(const std::string& label, const RunConfig& cfg, bool momentum = false,
                  const StepCheck& extra = {}) {
  Track t;
  t.label = label;
  std::printf("# running %s ...\n", label.c_str());
  std::fflush(stdout);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Setup su = build_case(cfg.case_name, cfg.overrides);
    const Problem& p = su.problem;
    const double g = p.params.g;
    t.periodic = p.grid.periodic();
    t.e0 = total_energy(su.state, p.bath, g);
    t.mass0 = total_mass(su.state);
    t.min_h = su.state.h.min();
    const double escale = std::abs(t.e0);

    RunHooks hooks;
    hooks.on_step = [&](const State& a, const State& b, const StepReport& rep) {
      for (std::size_t k = 0; k < a.h.size(); ++k) {
        const double h0 = a.h[k], h1 = b.h[k];
        if (!(h1 > 0.0) || h1 < 0.75 * h0 || h1 > 1.25 * h0) {
          ++t.bracket_violations;
          break;
        }
      }
      t.min_h = std::min(t.min_h, b.h.min());
      const double ea = total_energy(a, p.bath, g), eb = total_energy(b, p.bath, g);
      t.worst_energy_rise = std::max(t.worst_energy_rise, (eb - ea) / escale);
      if (eb > ea + kEnergySlack * escale) ++t.energy_violations;
      t.worst_mass_drift = std::max(t.worst_mass_drift, std::abs(total_mass(b) - t.mass0) / t.mass0);
      t.min_margin = std::min(t.min_margin, rep.margin);
      t.max_residual = std::max(t.max_residual, rep.residual);
      t.max_q = std::max(t.max_q, rep.max_abs_q);
      t.max_r = std::max(t.max_r, rep.max_abs_r);
      double dh2 = 0.0;
      for (std::size_t k = 0; k < a.h.size(); ++k) dh2 += (b.h[k] - a.h[k]) * (b.h[k] - a.h[k]);
      t.height_sum += 0.5 * g * p.grid.cell_area() * dh2;
      t.stab_sum += rep.stab_dissipation;
      t.worst_sums = std::max(t.worst_sums, (t.height_sum + t.stab_sum - t.e0) / escale);
      t.worst_excess = std::max(t.worst_excess, (eb + t.height_sum + t.stab_sum - t.e0) / escale);
      if (momentum) t.max_mom_residual = std::max(t.max_mom_residual, momentum_ledger(a, b, p, rep.dt));
      if (extra) extra(a, b, rep);
    };
    t.result = run_case(cfg, false, hooks);
    t.steps = t.result->steps;
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (t.error.empty())
    std::printf("#   %ld steps in %.1fs\n", t.steps, t.seconds);
  else
    std::printf("#   FAILED after %.1fs: %s\n", t.seconds, t.error.c_str());
  std::fflush(stdout);
  return t;
}

RunConfig config(const std::string& name) {
  RunConfig c;
  c.case_name = name;
  return c;
}

double total_variation_x(const CellField& h, int j) {
  double tv = 0.0;
  for (int i = 0; i + 1 < h.grid().nx(); ++i) tv += std::abs(h(i + 1, j) - h(i, j));
  return tv;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool ok(const Track& t) { return t.error.empty(); }

std::string failures(const std::vector<const Track*>& ts) {
  std::string s;
  for (const Track* t : ts)
    if (!ok(*t)) s += " " + t->label + " threw (" + t->error + ");";
  return s;
}

} // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int a = 1; a < argc; ++a) want.insert(std::atoi(argv[a]));
  const auto wanted = [&](std::initializer_list<int> cs) {
    if (want.empty()) return true;
    for (int c : cs)
      if (want.count(c)) return true;
    return false;
  };
  const auto start = std::chrono::steady_clock::now();

  std::vector<Track> all;  // every run, for the solver and positivity criteria
  std::map<std::string, std::size_t> idx;
  const auto keep = [&](Track t) {
    idx[t.label] = all.size();
    all.push_back(std::move(t));
    return &all.back();
  };
  all.reserve(32);

  // Well-balanced runs.
  if (wanted({1, 2, 8, 9, 3, 4, 12})) {
    for (const char* name : {"wb_test1", "wb_test2", "wb_test3", "wb_test4"}) keep(run_tracked(name, config(name)));
  }
  // Geostrophic adjustment, open and periodic.
  if (wanted({2, 9})) keep(run_tracked("geostrophic_adjustment", config("geostrophic_adjustment")));
  if (wanted({2, 3, 4, 5, 9, 12})) {
    RunConfig c = config("geostrophic_adjustment");
    c.overrides.bc = BoundaryMode::Periodic;
    keep(run_tracked("geostrophic_adjustment/periodic", c, true));
  }
  if (wanted({2, 3, 4, 9, 12})) {
    RunConfig c = config("shear_flow");
    c.overrides.nx = 64;
    c.t_final = kDay;
    keep(run_tracked("shear_flow/64", c));
  }

  // Inertial oscillation at three step sizes.
  std::vector<double> rot_err;
  std::vector<double> rot_dt;
  if (wanted({7, 2, 4, 9, 12})) {
    for (double cfl : {0.9, 0.45, 0.225}) {
      RunConfig c = config("constant_rotation");
      c.overrides.cfl_safety = cfl;
      double worst = 0.0, dt_max = 0.0;
      const double w = find_case("constant_rotation").omega;
      const StepCheck chk = [&](const State&, const State& b, const StepReport& rep) {
        const double ue = std::cos(w * b.t) + std::sin(w * b.t), ve = std::cos(w * b.t) - std::sin(w * b.t);
        for (std::size_t k = 0; k < b.h.size(); ++k) {
          worst = std::max(worst, std::abs(b.h[k] * b.u[k] - ue));
          worst = std::max(worst, std::abs(b.h[k] * b.v[k] - ve));
        }
        dt_max = std::max(dt_max, rep.dt);
      };
      keep(run_tracked(fmt("constant_rotation/cfl=%g", cfl), c, false, chk));
      rot_err.push_back(worst);
      rot_dt.push_back(dt_max);
    }
  }

  // Rossby adjustment with and without momentum diffusion.
  double tv0 = NAN, tv1 = NAN;
  if (wanted({11, 2, 9})) {
    for (double alpha : {0.0, 1.0}) {
      RunConfig c = config("rossby_adjustment");
      c.overrides.alpha = alpha;
      Track* t = keep(run_tracked(fmt("rossby_adjustment/alpha=%g", alpha), c));
      if (ok(*t)) (alpha == 0.0 ? tv0 : tv1) = total_variation_x(t->result->final_state.h, 1);
    }
  }

  // Convergence sweep against a self-generated reference.
  const std::vector<int> eoc_ks{16, 32, 64, 128};
  const int eoc_ref = 256;
  std::vector<std::array<double, 3>> eoc_err;
  bool eoc_ran = false;
  if (wanted({6, 2, 4, 9, 12})) {
    eoc_ran = true;
    RunConfig c = config("eoc_convergence");
    c.overrides.nx = c.overrides.ny = eoc_ref;
    Track* ref = keep(run_tracked("eoc_convergence/256", c));
    for (int k : eoc_ks) {
      c.overrides.nx = c.overrides.ny = k;
      Track* t = keep(run_tracked("eoc_convergence/" + std::to_string(k), c));
      if (ok(*t) && ok(*ref)) {
        const State& a = t->result->final_state;
        const State& r = ref->result->final_state;
        const int f = eoc_ref / k;
        eoc_err.push_back({l2_error(a.h, restrict(r.h, f)), l2_error(a.u, restrict(r.u, f)),
                           l2_error(a.v, restrict(r.v, f))});
      }
    }
  }

  // K-convergence ladder for the vortex pair.
  const std::vector<int> kc_ks{32, 64, 128};
  std::vector<LadderRow> ladder;
  if (wanted({10, 2, 4, 9, 12})) {
    RunConfig c = config("vortex_pair");
    c.t_final = 3.0 * kDay;
    std::vector<Snapshot> runs;
    std::optional<Grid> coarse;
    bool fine = true;
    for (int k : kc_ks) {
      c.overrides.nx = c.overrides.ny = k;
      Track* t = keep(run_tracked("vortex_pair/" + std::to_string(k), c));
      if (!ok(*t)) {
        fine = false;
        continue;
      }
      if (!coarse) coarse = t->result->final_state.grid();
      runs.push_back(Snapshot::restricted(t->result->final_state, *coarse));
    }
    c.overrides.nx = c.overrides.ny = 256;
    Track* ref = keep(run_tracked("vortex_pair/256", c));
    if (fine && ok(*ref)) {
      SolutionEnsemble ens{runs};
      ens.members.push_back(Snapshot::restricted(ref->result->final_state, *coarse));
      ladder = error_ladder(runs, kc_ks, ens);
    }
  }

  const auto get = [&](const std::string& label) -> const Track* {
    const auto it = idx.find(label);
    return it == idx.end() ? nullptr : &all[it->second];
  };
  std::vector<const Track*> periodic_runs;
  for (const auto& t : all)
    if (t.periodic) periodic_runs.push_back(&t);

  std::map<int, Verdict> verdicts;

  if (wanted({1})) {
    Verdict v{true, ""};
    for (const char* name : {"wb_test1", "wb_test2", "wb_test3", "wb_test4"}) {
      const Track* t = get(name);
      if (!ok(*t)) {
        v.pass = false;
        v.detail += std::string(" ") + name + " threw (" + t->error + ");";
        continue;
      }
      const State& a = t->result->final_state;
      const Setup& su = t->result->setup;
      const double g = su.problem.params.g;
      const CellField p1 = potential(a, su.problem.bath, g), p0 = potential(su.state, su.problem.bath, g);
      const double e = std::max({l2_error(p1, p0), l2_error(a.u, su.state.u), l2_error(a.v, su.state.v)});
      v.detail += std::string(" ") + name + fmt("=%.2e", e);
      if (!(e <= kWbTol)) v.pass = false;
    }
    v.detail = "max L2 error in phi,u,v:" + v.detail + fmt(" (limit %.0e)", kWbTol);
    verdicts[1] = v;
  }

  if (wanted({2})) {
    Verdict v{true, ""};
    long viol = 0, steps = 0;
    double minh = std::numeric_limits<double>::infinity();
    for (const auto& t : all) {
      if (!ok(t)) continue;
      viol += t.bracket_violations;
      steps += t.steps;
      minh = std::min(minh, t.min_h);
    }
    bool all_ok = true;
    for (const auto& t : all) all_ok = all_ok && ok(t);
    v.pass = viol == 0 && minh > 0.0 && all_ok;
    v.detail = fmt("%.0f bracket violations over %.0f steps in all runs, min h %.4g", viol, steps, minh);
    for (const auto& t : all)
      if (!ok(t)) v.detail += "; " + t.label + " threw";
    verdicts[2] = v;
  }

  if (wanted({3})) {
    Verdict v{true, ""};
    long viol = 0;
    double worst = -INFINITY;
    for (const Track* t : periodic_runs) {
      if (!ok(*t)) continue;
      viol += t->energy_violations;
      worst = std::max(worst, t->worst_energy_rise);
    }
    const std::string fails = failures(periodic_runs);
    v.pass = viol == 0 && fails.empty() && !periodic_runs.empty();
    v.detail = fmt("%.0f energy increases beyond %.0e*|E0| on %.0f periodic runs, largest step change %.2e*|E0|",
                   viol, kEnergySlack, periodic_runs.size(), worst) + fails;
    verdicts[3] = v;
  }

  if (wanted({4})) {
    Verdict v{true, ""};
    double worst = 0.0;
    for (const Track* t : periodic_runs)
      if (ok(*t)) worst = std::max(worst, t->worst_mass_drift);
    const std::string fails = failures(periodic_runs);
    v.pass = worst <= kMassTol && fails.empty() && !periodic_runs.empty();
    v.detail = fmt("max relative mass drift %.2e on periodic runs (limit %.0e)", worst, kMassTol) + fails;
    verdicts[4] = v;
  }

  if (wanted({5})) {
    const Track* t = get("geostrophic_adjustment/periodic");
    Verdict v{false, ""};
    if (ok(*t)) {
      v.pass = t->max_mom_residual <= kMomentumTol;
      v.detail = fmt("max relative total momentum residual %.2e over %.0f steps (limit %.0e)", t->max_mom_residual,
                     t->steps, kMomentumTol);
    } else {
      v.detail = "run threw: " + t->error;
    }
    verdicts[5] = v;
  }

  if (wanted({6})) {
    Verdict v{false, ""};
    if (eoc_ran && eoc_err.size() == eoc_ks.size()) {
      v.pass = true;
      std::string d;
      for (std::size_t n = 1; n < eoc_ks.size(); ++n) {
        const double lr = std::log(static_cast<double>(eoc_ks[n]) / eoc_ks[n - 1]);
        double e[3];
        for (int c = 0; c < 3; ++c) {
          e[c] = std::log(eoc_err[n - 1][c] / eoc_err[n][c]) / lr;
          if (!(e[c] >= kEocMin)) v.pass = false;
        }
        d += fmt(" k=%.0f h%.2f u%.2f v%.2f;", eoc_ks[n], e[0], e[1], e[2]);
      }
      v.detail = "EOC vs 256^2 reference:" + d + fmt(" (min %.1f)", kEocMin);
    } else {
      v.detail = "sweep incomplete:";
      for (const auto& t : all)
        if (t.label.rfind("eoc_convergence", 0) == 0 && !ok(t)) v.detail += " " + t.label + " threw (" + t.error + ")";
    }
    verdicts[6] = v;
  }

  if (wanted({7})) {
    Verdict v{false, ""};
    bool runs_ok = rot_err.size() == 3;
    for (const auto& t : all)
      if (t.label.rfind("constant_rotation", 0) == 0 && !ok(t)) runs_ok = false;
    if (runs_ok) {
      const double r1 = rot_err[0] / rot_err[1], r2 = rot_err[1] / rot_err[2];
      const double C = rot_err[2] / rot_dt[2];
      const bool bounded = rot_err[0] <= 2.0 * C * rot_dt[0] && rot_err[1] <= 2.0 * C * rot_dt[1];
      v.pass = r1 >= kRateLo && r1 <= kRateHi && r2 >= kRateLo && r2 <= kRateHi && bounded;
      v.detail = fmt("max momentum errors %.3e, %.3e, %.3e at halved dt", rot_err[0], rot_err[1], rot_err[2]) +
                 fmt(", ratios %.3f %.3f (range [%.1f, %.1f])", r1, r2, kRateLo, kRateHi) +
                 fmt(", C = err/dt = %.3f", C);
    } else {
      v.detail = "constant_rotation runs failed";
    }
    verdicts[7] = v;
  }

  if (wanted({8})) {
    const Track* t = get("wb_test2");
    Verdict v{false, ""};
    if (ok(*t)) {
      v.pass = t->max_q <= kStabTol && t->max_r <= kStabTol;
      v.detail = fmt("wb_test2 max|q| %.2e, max|r| %.2e over %.0f steps (limit %.0e)", t->max_q, t->max_r, t->steps,
                     kStabTol);
    } else {
      v.detail = "wb_test2 threw: " + t->error;
    }
    verdicts[8] = v;
  }

  if (wanted({9})) {
    Verdict v{true, ""};
    double margin = INFINITY, res = 0.0;
    long systems = 0;
    for (const auto& t : all) {
      if (!ok(t)) {
        v.pass = false;
        v.detail += "; " + t.label + " threw (" + t.error + ")";
        continue;
      }
      margin = std::min(margin, t.min_margin);
      res = std::max(res, t.max_residual);
      systems += t.steps;
    }
    v.pass = v.pass && margin > 0.0 && res <= kSolverTol;
    v.detail = fmt("%.0f accepted solves, min dominance margin %.3e, max relative residual %.2e (limit %.0e)",
                   systems, margin, res, kSolverTol) + v.detail;
    verdicts[9] = v;
  }

  if (wanted({10})) {
    Verdict v{false, ""};
    if (!ladder.empty()) {
      v.pass = true;
      const auto row = [&](int k, const char* comp) -> const LadderRow& {
        for (const auto& r : ladder)
          if (r.k == k && r.component == comp) return r;
        throw std::logic_error("missing ladder row");
      };
      std::string d;
      for (const char* comp : {"h", "mx", "my"}) {
        const LadderRow &a = row(64, comp), &b = row(128, comp);
        const bool dec = b.e2 < a.e2 && b.e3 < a.e3 && b.e4 < a.e4;
        if (!dec) v.pass = false;
        d += std::string(" ") + comp + fmt(" E2 %.3g->%.3g E3 %.3g->%.3g", a.e2, b.e2, a.e3, b.e3) +
             fmt(" E4 %.3g->%.3g (E1 %.3g->%.3g);", a.e4, b.e4, a.e1, b.e1);
      }
      v.detail = "64->128:" + d;
    } else {
      v.detail = "ladder runs failed:";
      for (const auto& t : all)
        if (t.label.rfind("vortex_pair", 0) == 0 && !ok(t)) v.detail += " " + t.label + " threw (" + t.error + ")";
    }
    verdicts[10] = v;
  }

  if (wanted({11})) {
    Verdict v{false, ""};
    const Track* t1 = get("rossby_adjustment/alpha=1");
    const Track* t0 = get("rossby_adjustment/alpha=0");
    if (ok(*t0) && ok(*t1)) {
      v.pass = tv1 < tv0 && t1->energy_violations == 0;
      v.detail = fmt("TV(h) alpha=0 %.5f, alpha=1 %.5f; alpha=1 energy increases %.0f (largest step change %.2e*|E0|)",
                     tv0, tv1, t1->energy_violations, t1->worst_energy_rise);
    } else {
      v.detail = "rossby runs failed:" + failures({t0, t1});
    }
    verdicts[11] = v;
  }

  if (wanted({12})) {
    Verdict v{true, ""};
    double sums = -INFINITY, excess = -INFINITY;
    for (const Track* t : periodic_runs) {
      if (!ok(*t)) continue;
      sums = std::max(sums, t->worst_sums);
      excess = std::max(excess, t->worst_excess);
    }
    const std::string fails = failures(periodic_runs);
    v.pass = sums <= 0.0 && excess <= kEnergySlack && fails.empty() && !periodic_runs.empty();
    v.detail = fmt("on %.0f periodic runs: max (sums - E0)/|E0| = %.4f, max (E^n + sums - E0)/|E0| = %.2e",
                   periodic_runs.size(), sums, excess) + fmt(" (slack %.0e)", kEnergySlack) + fails;
    verdicts[12] = v;
  }

  const char* names[] = {"",
                         "well-balancing",
                         "positivity and height bracket",
                         "energy stability",
                         "mass conservation",
                         "total momentum ledger",
                         "convergence order",
                         "exact rotation",
                         "stabilisation vanishing",
                         "elliptic solver contract",
                         "K-convergence ladder",
                         "Rossby oscillation control",
                         "global energy estimate"};
  int failed = 0;
  for (const auto& [c, v] : verdicts) {
    std::printf("%s criterion %2d (%s): %s\n", v.pass ? "PASS" : "FAIL", c, names[c], v.detail.c_str());
    failed += v.pass ? 0 : 1;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("# %zu criteria, %d failed, %.0fs total\n", verdicts.size(), failed, secs);
  return failed == 0 ? 0 : 1;
}
