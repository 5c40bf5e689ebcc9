#include "rsw/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsw/diagnostics.hpp"
#include "rsw/errors.hpp"
#include "rsw/parallel.hpp"

namespace rsw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Closed {
  Padded h, u, v, b, phi;
};

Closed close_state(const State& s, const Problem& p) {
  Closed c{ghost_closure(s.h, p.frozen_h()), ghost_closure(s.u, p.frozen_u()),
           ghost_closure(s.v, p.frozen_v()), ghost_closure(p.bath.b, p.frozen_b()),
           Padded(p.grid.nx(), p.grid.ny())};
  auto h = c.h.values();
  auto b = c.b.values();
  auto phi = c.phi.values();
  const double g = p.params.g;
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = g * (h[k] + b[k]);
  return c;
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

// Resolves a padded position of the unknown phi^{n+1} to a matrix column,
// or reports that the value is a frozen constant (equilibrium hold).
struct Resolved {
  int col;      // -1 when frozen
  double value; // frozen value when col < 0
};

Resolved resolve(const Grid& g, const Padded* frozen_phi, int i, int j) {
  const int nx = g.nx(), ny = g.ny();
  if (i < 0 || i >= nx) {
    switch (g.bc_x()) {
    case BoundaryMode::Periodic: i = wrap(i, nx); break;
    case BoundaryMode::Extrapolation: i = std::clamp(i, 0, nx - 1); break;
    case BoundaryMode::EquilibriumHold: return {-1, (*frozen_phi)(i, j)};
    }
  }
  if (j < 0 || j >= ny) {
    switch (g.bc_y()) {
    case BoundaryMode::Periodic: j = wrap(j, ny); break;
    case BoundaryMode::Extrapolation: j = std::clamp(j, 0, ny - 1); break;
    case BoundaryMode::EquilibriumHold: return {-1, (*frozen_phi)(i, j)};
    }
  }
  return {static_cast<int>(g.index(i, j)), 0.0};
}

int first_edge(const EdgeField& e) { return e.wraps() ? 0 : -1; }

} // namespace

double compute_dt(const State& s, const Problem& p) {
  const Grid& g = p.grid;
  const Params& par = p.params;
  const double hmax_all = s.h.max();
  if (!(par.eta > 15.0 / 8.0 * hmax_all))
    throw NonpositiveDt("eta = " + std::to_string(par.eta) + " does not exceed 15/8 max h = " +
                        std::to_string(15.0 / 8.0 * hmax_all));

  const Closed c = close_state(s, p);
  const int nx = g.nx(), ny = g.ny();
  const double S = 2.0 / g.dx() + 2.0 / g.dy();
  const double w = par.omega, eta = par.eta;

  auto kx = [&](int i, int j) {
    return std::abs((c.phi(i + 1, j) - c.phi(i - 1, j)) / (2.0 * g.dx()) - w * c.v(i, j));
  };
  auto ky = [&](int i, int j) {
    return std::abs((c.phi(i, j + 1) - c.phi(i, j - 1)) / (2.0 * g.dy()) + w * c.u(i, j));
  };
  // h^{n+1} is unknown here: sqrt(eta / max h^{n+1}) uses the lower end of
  // the bracket 3/4 h^n and the ratio limit uses the upper end 5/4 h^n.
  auto edge_bound = [&](double vel, double lam, double ha, double hb) {
    const double hmax = std::max(ha, hb), hmin = std::min(ha, hb);
    const double speed = vel + std::sqrt(eta / (0.75 * hmax)) * lam;
    const double limit = std::min(1.0, hmin / (1.25 * hmax));
    return speed > 0.0 ? limit / (S * speed) : kInf;
  };

  const double dt_x = min_rows(ny, [&](int j) {
    double m = kInf;
    for (int i = -1; i < nx; ++i) {
      const double lam = std::sqrt(std::max(kx(i, j), kx(i + 1, j)));
      const double vel = std::max(std::abs(c.u(i, j)), std::abs(c.u(i + 1, j)));
      m = std::min(m, edge_bound(vel, lam, c.h(i, j), c.h(i + 1, j)));
    }
    return m;
  });
  const double dt_y = min_rows(ny + 1, [&](int jj) {
    const int j = jj - 1;
    double m = kInf;
    for (int i = 0; i < nx; ++i) {
      const double lam = std::sqrt(std::max(ky(i, j), ky(i, j + 1)));
      const double vel = std::max(std::abs(c.v(i, j)), std::abs(c.v(i, j + 1)));
      m = std::min(m, edge_bound(vel, lam, c.h(i, j), c.h(i, j + 1)));
    }
    return m;
  });

  double dt_aux = kInf;
  if (w != 0.0) {
    dt_aux = min_rows(ny, [&](int j) {
      double m = kInf;
      for (int i = 0; i < nx; ++i) {
        const double h = s.h(i, j);
        const double bound = par.zeta * h * (eta - 15.0 / 8.0 * h) / (2.0 * w * w * eta * eta);
        m = std::min(m, std::sqrt(bound));
      }
      return m;
    });
  }
  // The momentum diffusion is explicit with viscosity g alpha h dt / beta,
  // so it carries its own stability limit, again with h^{n+1} <= 5/4 h^n.
  double dt_diff = kInf;
  if (par.alpha > 0.0) {
    const double beta = 1.0 / S;
    const double lap = 2.0 / (g.dx() * g.dx()) + 2.0 / (g.dy() * g.dy());
    dt_diff = std::sqrt(beta / (par.g * par.alpha * 1.25 * hmax_all * lap));
  }
  return par.cfl_safety * std::min({dt_x, dt_y, dt_aux, dt_diff});
}

StencilSystem assemble_phi_system(const State& s, const Problem& p, double dt) {
  const Grid& g = p.grid;
  const Params& par = p.params;
  const int nx = g.nx(), ny = g.ny();
  const Closed c = close_state(s, p);
  const Padded* fphi = p.frozen_phi();

  StencilSystem sys(nx, ny);
  const double gr = par.g, w = par.omega, eta = par.eta;
  const double cx = gr * eta * dt * dt / (4.0 * g.dx() * g.dx());
  const double cy = gr * eta * dt * dt / (4.0 * g.dy() * g.dy());
  const double ax = dt / (2.0 * g.dx()), ay = dt / (2.0 * g.dy());
  const double sx = gr * w * eta * dt * dt / (2.0 * g.dx());
  const double sy = gr * w * eta * dt * dt / (2.0 * g.dy());

#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      double rhs = c.phi(i, j) + gr * ax * (c.b(i + 1, j) * c.u(i + 1, j) - c.b(i - 1, j) * c.u(i - 1, j)) +
                   gr * ay * (c.b(i, j + 1) * c.v(i, j + 1) - c.b(i, j - 1) * c.v(i, j - 1)) -
                   sx * (c.v(i + 1, j) - c.v(i - 1, j)) + sy * (c.u(i, j + 1) - c.u(i, j - 1));
      auto term = [&](int ii, int jj, double coef) {
        const Resolved r = resolve(g, fphi, ii, jj);
        if (r.col < 0)
          rhs -= coef * r.value;
        else
          sys.add(k, r.col, coef);
      };
      term(i, j, 1.0 + 2.0 * cx + 2.0 * cy);
      term(i + 2, j, -cx);
      term(i - 2, j, -cx);
      term(i, j + 2, -cy);
      term(i, j - 2, -cy);
      term(i + 1, j, ax * c.u(i + 1, j));
      term(i - 1, j, -ax * c.u(i - 1, j));
      term(i, j + 1, ay * c.v(i, j + 1));
      term(i, j - 1, -ay * c.v(i, j - 1));
      sys.rhs[k] = rhs;
    }
  }
  return sys;
}

CellField recover_height(const CellField& phi_next, const Bathymetry& bath, double g) {
  CellField h(phi_next.grid());
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < h.size(); ++k) {
    h[k] = phi_next[k] / g - bath.b[k];
    if (!(h[k] > 0.0)) bad.push_back(k);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "non-positive water height in " << bad.size() << " cell(s), first at index " << bad.front();
    throw PositivityFailure(msg.str(), std::move(bad));
  }
  return h;
}

std::pair<Padded, Padded> stabilisation_fields(const CellField& phi_next, const State& s,
                                               const Problem& p, double dt) {
  const Grid& g = p.grid;
  const int nx = g.nx(), ny = g.ny();
  const Padded phi = ghost_closure(phi_next, p.frozen_phi());
  const Padded u = ghost_closure(s.u, p.frozen_u());
  const Padded v = ghost_closure(s.v, p.frozen_v());
  const double ed = p.params.eta * dt, w = p.params.omega;
  const double hx = 0.5 / g.dx(), hy = 0.5 / g.dy();

  Padded q(nx, ny), r(nx, ny);
#pragma omp parallel for schedule(static)
  for (int j = -1; j <= ny; ++j) {
    for (int i = -1; i <= nx; ++i) {
      const bool in_x = i >= 0 && i < nx, in_y = j >= 0 && j < ny;
      if (in_y) q(i, j) = ed * ((phi(i + 1, j) - phi(i - 1, j)) * hx - w * v(i, j));
      if (in_x) r(i, j) = ed * ((phi(i, j + 1) - phi(i, j - 1)) * hy + w * u(i, j));
    }
  }
  return {std::move(q), std::move(r)};
}

std::pair<EdgeField, EdgeField> mass_fluxes(const CellField& h_next, const State& s,
                                            const Padded& q, const Padded& r, const Problem& p) {
  const Grid& g = p.grid;
  const int nx = g.nx(), ny = g.ny();
  const Padded h = ghost_closure(h_next, p.frozen_h());
  const Padded u = ghost_closure(s.u, p.frozen_u());
  const Padded v = ghost_closure(s.v, p.frozen_v());

  EdgeField F(g, EdgeOrientation::Vertical), G(g, EdgeOrientation::Horizontal);
  const int fi = first_edge(F), fj = first_edge(G);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j)
    for (int i = fi; i < nx; ++i)
      F(i, j) = 0.5 * (h(i, j) * u(i, j) + h(i + 1, j) * u(i + 1, j)) - 0.5 * (q(i, j) + q(i + 1, j));
#pragma omp parallel for schedule(static)
  for (int j = fj; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      G(i, j) = 0.5 * (h(i, j) * v(i, j) + h(i, j + 1) * v(i, j + 1)) - 0.5 * (r(i, j) + r(i, j + 1));
  return {std::move(F), std::move(G)};
}

CellField mass_update(const CellField& h_n, const EdgeField& F, const EdgeField& G, double dt) {
  const Grid& g = h_n.grid();
  CellField out(g);
  const double lx = dt / g.dx(), ly = dt / g.dy();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out(i, j) = h_n(i, j) - lx * (F(i, j) - F(i - 1, j)) - ly * (G(i, j) - G(i, j - 1));
  return out;
}

std::pair<EdgeField, EdgeField> upwind_edge_velocity(const CellField& w, const EdgeField& F,
                                                     const EdgeField& G, const Padded* frozen_w) {
  const Grid& g = w.grid();
  const Padded pw = ghost_closure(w, frozen_w);
  EdgeField wx(g, EdgeOrientation::Vertical), wy(g, EdgeOrientation::Horizontal);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = first_edge(F); i < g.nx(); ++i) wx(i, j) = F(i, j) >= 0.0 ? pw(i, j) : pw(i + 1, j);
  for (int j = first_edge(G); j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) wy(i, j) = G(i, j) >= 0.0 ? pw(i, j) : pw(i, j + 1);
  return {std::move(wx), std::move(wy)};
}

namespace {

struct MomentumTerms {
  CellField u, v;
  // Cellwise pieces reused by the total momentum balance.
  CellField press_x, press_y;  // h^{n+1} (d phi - d^T Lambda)
  CellField diff_x, diff_y;    // h^{n+1} d^T Lambda, h^{n+1} d^T Theta
};

MomentumTerms momentum_terms(const State& s, const CellField& h_next, const CellField& phi_next,
                             const EdgeField& F, const EdgeField& G, const Padded& q,
                             const Padded& r, const Problem& p, double dt) {
  const Grid& g = p.grid;
  const int nx = g.nx(), ny = g.ny();
  const double dx = g.dx(), dy = g.dy(), w = p.params.omega;
  const Padded phi = ghost_closure(phi_next, p.frozen_phi());
  const auto up_u = upwind_edge_velocity(s.u, F, G, p.frozen_u());
  const auto up_v = upwind_edge_velocity(s.v, F, G, p.frozen_v());
  const EdgeField& ux = up_u.first;
  const EdgeField& uy = up_u.second;
  const EdgeField& vx = up_v.first;
  const EdgeField& vy = up_v.second;

  const bool diffuse = p.params.alpha > 0.0;
  Padded mx(nx, ny), my(nx, ny);
  if (diffuse) {
    const Padded h1 = ghost_closure(h_next, p.frozen_h());
    const Padded u = ghost_closure(s.u, p.frozen_u());
    const Padded v = ghost_closure(s.v, p.frozen_v());
    auto mxv = mx.values();
    auto myv = my.values();
    for (std::size_t k = 0; k < mxv.size(); ++k) {
      mxv[k] = h1.values()[k] * u.values()[k];
      myv[k] = h1.values()[k] * v.values()[k];
    }
  }
  const double beta = 1.0 / (2.0 / dx + 2.0 / dy);
  const double cl = p.params.g * p.params.alpha * dt / beta;
  auto lam = [&](int i, int j) { return cl * (mx(i + 1, j) - mx(i, j)) / dx; };
  auto theta = [&](int i, int j) { return cl * (my(i, j + 1) - my(i, j)) / dy; };

  MomentumTerms m{CellField(g), CellField(g), CellField(g), CellField(g), CellField(g), CellField(g)};
  const double lx = dt / dx, ly = dt / dy;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double h0 = s.h(i, j), h1 = h_next(i, j);
      const double u0 = s.u(i, j), v0 = s.v(i, j);
      const double dphix = (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * dx);
      const double dphiy = (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * dy);
      const double dlam = diffuse ? (lam(i, j) - lam(i - 1, j)) / dx : 0.0;
      const double dthe = diffuse ? (theta(i, j) - theta(i, j - 1)) / dy : 0.0;

      const double hu = h0 * u0 - lx * (F(i, j) * ux(i, j) - F(i - 1, j) * ux(i - 1, j)) -
                        ly * (G(i, j) * uy(i, j) - G(i, j - 1) * uy(i, j - 1)) -
                        dt * h1 * (dphix - dlam) + dt * (w * h1 * v0 - w * r(i, j));
      const double hv = h0 * v0 - lx * (F(i, j) * vx(i, j) - F(i - 1, j) * vx(i - 1, j)) -
                        ly * (G(i, j) * vy(i, j) - G(i, j - 1) * vy(i, j - 1)) -
                        dt * h1 * (dphiy - dthe) + dt * (-w * h1 * u0 + w * q(i, j));
      m.u(i, j) = hu / h1;
      m.v(i, j) = hv / h1;
      m.press_x(i, j) = h1 * dphix;
      m.press_y(i, j) = h1 * dphiy;
      m.diff_x(i, j) = h1 * dlam;
      m.diff_y(i, j) = h1 * dthe;
    }
  }
  return m;
}

double cell_sum(const CellField& f) {
  const Grid& g = f.grid();
  return g.cell_area() * sum_rows(g.ny(), [&](int j) {
    double s = 0.0;
    for (int i = 0; i < g.nx(); ++i) s += f(i, j);
    return s;
  });
}

template <class Fn>
double cell_sum_of(const Grid& g, Fn&& fn) {
  return g.cell_area() * sum_rows(g.ny(), [&](int j) {
    double s = 0.0;
    for (int i = 0; i < g.nx(); ++i) s += fn(i, j);
    return s;
  });
}

} // namespace

std::pair<CellField, CellField> momentum_update(const State& s, const CellField& h_next,
                                                const CellField& phi_next, const EdgeField& F,
                                                const EdgeField& G, const Padded& q,
                                                const Padded& r, const Problem& p, double dt) {
  MomentumTerms m = momentum_terms(s, h_next, phi_next, F, G, q, r, p, dt);
  return {std::move(m.u), std::move(m.v)};
}

std::pair<State, StepReport> advance(const State& s, const Problem& p, double dt,
                                     const AdvanceOptions& opt) {
  const Grid& g = p.grid;
  const Params& par = p.params;
  const int nx = g.nx(), ny = g.ny();
  StepReport rep;
  rep.dt = dt;

  const StencilSystem sys = assemble_phi_system(s, p, dt);
  const CellField phi_n = potential(s, p.bath, par.g);
  const SolveResult sol = solve(sys, phi_n.values(), opt.solver);
  rep.iterations = sol.iterations;
  rep.residual = sol.residual;
  rep.margin = sol.margin;

  CellField phi1(g);
  std::copy(sol.x.begin(), sol.x.end(), phi1.values().begin());
  CellField h1 = recover_height(phi1, p.bath, par.g);

  const auto qr = stabilisation_fields(phi1, s, p, dt);
  const Padded& q = qr.first;
  const Padded& r = qr.second;
  const auto fg = mass_fluxes(h1, s, q, r, p);
  const EdgeField& F = fg.first;
  const EdgeField& G = fg.second;

  if (opt.check_mass) {
    const CellField hc = mass_update(s.h, F, G, dt);
    double mismatch = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < hc.size(); ++k) {
      mismatch = std::max(mismatch, std::abs(hc[k] - h1[k]));
      scale = std::max(scale, std::abs(phi1[k]));
    }
    for (double b : sys.rhs) scale = std::max(scale, std::abs(b));
    rep.mass_mismatch = mismatch;
    const double allowed = 100.0 * opt.solver.tol * scale / par.g;
    if (mismatch > allowed)
      throw MismatchBeyondTolerance("flux-form height update differs from the elliptic solution by " +
                                    std::to_string(mismatch) + " (allowed " + std::to_string(allowed) + ")");
  }

  MomentumTerms m = momentum_terms(s, h1, phi1, F, G, q, r, p, dt);
  State next(h1, std::move(m.u), std::move(m.v), s.t + dt);
  if (!next.u.all_finite() || !next.v.all_finite())
    throw NumericalError("non-finite velocity after the momentum update");

  const double w = par.omega, eta = par.eta;
  rep.q2 = cell_sum_of(g, [&](int i, int j) { return q(i, j) * q(i, j); });
  rep.r2 = cell_sum_of(g, [&](int i, int j) { return r(i, j) * r(i, j); });
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      rep.max_abs_q = std::max(rep.max_abs_q, std::abs(q(i, j)));
      rep.max_abs_r = std::max(rep.max_abs_r, std::abs(r(i, j)));
    }
  rep.energy_before = total_energy(s, p.bath, par.g);
  rep.energy_after = total_energy(next, p.bath, par.g);
  rep.min_h = h1.min();
  rep.max_h = h1.max();
  rep.height_increment = 0.5 * par.g * cell_sum_of(g, [&](int i, int j) {
    const double d = h1(i, j) - s.h(i, j);
    return d * d;
  });
  rep.stab_dissipation = cell_sum_of(g, [&](int i, int j) {
    return (1.0 - par.zeta) / (eta * eta) * (eta - 1.5 * h1(i, j)) *
           (q(i, j) * q(i, j) + r(i, j) * r(i, j));
  });

  // Step conditions: height bracket and the three energy-stability conditions.
  bool bracket = true, c1 = true, c2 = true, c3 = true;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double hn = s.h(i, j), hp = h1(i, j);
      if (!(hp >= 0.75 * hn && hp <= 1.25 * hn)) bracket = false;
      if (!(eta > 1.5 * hp)) c1 = false;
      const double fl = (std::min(F(i, j), 0.0) - std::max(F(i - 1, j), 0.0)) / g.dx() +
                        (std::min(G(i, j), 0.0) - std::max(G(i, j - 1), 0.0)) / g.dy();
      if (!(1.0 + 3.0 * dt / hp * fl >= -1e-12)) c2 = false;
      if (w != 0.0 && !(dt * dt <= par.zeta * 2.0 * hp / (3.0 * w * w * eta * eta) * (eta - 1.5 * hp)))
        c3 = false;
    }
  }
  rep.bracket_ok = bracket;
  if (!bracket) rep.violations.emplace_back("height bracket");
  if (!c1) rep.violations.emplace_back("eta bound");
  if (!c2) rep.violations.emplace_back("upwind flux condition");
  if (!c3) rep.violations.emplace_back("rotation time-step bound");

  if (g.periodic()) {
    const double gb = par.g;
    const CellField dbx = ddx_centered(p.bath.b, p.frozen_b());
    const CellField dby = ddy_centered(p.bath.b, p.frozen_b());
    const auto m0 = momenta(s);
    const auto m1 = momenta(next);
    const CellField& mx0 = m0.first;
    const CellField& my0 = m0.second;
    const CellField& mx1 = m1.first;
    const CellField& my1 = m1.second;
    const double lhs_x = cell_sum(mx1) - cell_sum(mx0);
    const double lhs_y = cell_sum(my1) - cell_sum(my0);
    const double rhs_x = dt * cell_sum_of(g, [&](int i, int j) {
      return -gb * h1(i, j) * dbx(i, j) + w * h1(i, j) * s.v(i, j) - w * r(i, j) + m.diff_x(i, j);
    });
    const double rhs_y = dt * cell_sum_of(g, [&](int i, int j) {
      return -gb * h1(i, j) * dby(i, j) - w * h1(i, j) * s.u(i, j) + w * q(i, j) + m.diff_y(i, j);
    });
    const double scale_x =
        l1_norm(mx0) + l1_norm(mx1) + dt * cell_sum_of(g, [&](int i, int j) {
          return std::abs(m.press_x(i, j)) + std::abs(w * h1(i, j) * s.v(i, j)) + std::abs(w * r(i, j)) +
                 std::abs(m.diff_x(i, j));
        });
    const double scale_y =
        l1_norm(my0) + l1_norm(my1) + dt * cell_sum_of(g, [&](int i, int j) {
          return std::abs(m.press_y(i, j)) + std::abs(w * h1(i, j) * s.u(i, j)) + std::abs(w * q(i, j)) +
                 std::abs(m.diff_y(i, j));
        });
    rep.momx_residual = scale_x > 0.0 ? std::abs(lhs_x - rhs_x) / scale_x : 0.0;
    rep.momy_residual = scale_y > 0.0 ? std::abs(lhs_y - rhs_y) / scale_y : 0.0;
  }
  return {std::move(next), std::move(rep)};
}

Stepper::Stepper(Problem problem, StepperOptions opt) : problem_(std::move(problem)), opt_(opt) {
  validate(problem_.params);
}

StepReport Stepper::step(State& s, double dt_max) {
  double dt = std::min(compute_dt(s, problem_), dt_max);
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw NonpositiveDt("no finite positive time step (dt = " + std::to_string(dt) + ")");
  if (!e0_) e0_ = total_energy(s, problem_.bath, problem_.params.g);

  AdvanceOptions aopt;
  aopt.solver = opt_.solver;
  const int every = std::max(1, opt_.mass_check_every);
  aopt.check_mass = steps_ % every == 0;

  for (int attempt = 0;; ++attempt) {
    auto [next, rep] = advance(s, problem_, dt, aopt);
    if (!rep.violations.empty()) {
      if (attempt < opt_.max_retries) {
        dt *= 0.5;
        continue;
      }
      std::string what = "step conditions still violated after " + std::to_string(attempt) + " retries:";
      for (const auto& v : rep.violations) what += " " + v + ";";
      if (!rep.bracket_ok) throw BracketViolation(what);
      throw NumericalError(what);
    }
    rep.retries = attempt;
    if (problem_.grid.periodic() &&
        rep.energy_after > rep.energy_before + opt_.energy_slack * std::abs(*e0_))
      throw EnergyIncrease("total energy increased from " + std::to_string(rep.energy_before) + " to " +
                           std::to_string(rep.energy_after));
    s = std::move(next);
    ++steps_;
    return rep;
  }
}

} // namespace rsw
