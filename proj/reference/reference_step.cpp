#include "reference_step.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsw::reference {

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

// Value of a cell quantity at a possibly out-of-range index. `frozen` is the
// padded initial data, consulted only along EquilibriumHold axes.
template <class Field>
double at(const Grid& g, const Field& f, const Padded* frozen, int i, int j) {
  if (i < 0 || i >= g.nx()) {
    switch (g.bc_x()) {
    case BoundaryMode::Periodic: i = wrap(i, g.nx()); break;
    case BoundaryMode::Extrapolation: i = std::clamp(i, 0, g.nx() - 1); break;
    case BoundaryMode::EquilibriumHold: return (*frozen)(i, j);
    }
  }
  if (j < 0 || j >= g.ny()) {
    switch (g.bc_y()) {
    case BoundaryMode::Periodic: j = wrap(j, g.ny()); break;
    case BoundaryMode::Extrapolation: j = std::clamp(j, 0, g.ny() - 1); break;
    case BoundaryMode::EquilibriumHold: return (*frozen)(i, j);
    }
  }
  return f(i, j);
}

struct Lookup {
  const State& s;
  const Problem& p;
  const Grid& g;

  double h(int i, int j) const { return at(g, s.h, p.frozen_h(), i, j); }
  double u(int i, int j) const { return at(g, s.u, p.frozen_u(), i, j); }
  double v(int i, int j) const { return at(g, s.v, p.frozen_v(), i, j); }
  double b(int i, int j) const { return at(g, p.bath.b, p.frozen_b(), i, j); }
  double phi(const CellField& f, int i, int j) const { return at(g, f, p.frozen_phi(), i, j); }
  double hn(const CellField& f, int i, int j) const { return at(g, f, p.frozen_h(), i, j); }
};

double q_at(const Lookup& L, const CellField& phi, double dt, int i, int j) {
  const double d = (L.phi(phi, i + 1, j) - L.phi(phi, i - 1, j)) / (2.0 * L.g.dx());
  return L.p.params.eta * dt * (d - L.p.params.omega * L.v(i, j));
}

double r_at(const Lookup& L, const CellField& phi, double dt, int i, int j) {
  const double d = (L.phi(phi, i, j + 1) - L.phi(phi, i, j - 1)) / (2.0 * L.g.dy());
  return L.p.params.eta * dt * (d + L.p.params.omega * L.u(i, j));
}

// h^{n+1} u^n - q and h^{n+1} v^n - r at a cell, with h^{n+1} = phi / g - b.
double mx_at(const Lookup& L, const CellField& phi, double dt, int i, int j) {
  const double h1 = L.phi(phi, i, j) / L.p.params.g - L.b(i, j);
  return h1 * L.u(i, j) - q_at(L, phi, dt, i, j);
}

double my_at(const Lookup& L, const CellField& phi, double dt, int i, int j) {
  const double h1 = L.phi(phi, i, j) / L.p.params.g - L.b(i, j);
  return h1 * L.v(i, j) - r_at(L, phi, dt, i, j);
}

} // namespace

double height_residual(const State& s, const Problem& p, double dt, const CellField& phi, int i, int j) {
  const Lookup L{s, p, p.grid};
  const double gr = p.params.g;
  // Edge flux F_{i+1/2} is the average of the two cell values, so the flux
  // difference collapses to a centered difference of the cell values.
  const double div = (mx_at(L, phi, dt, i + 1, j) - mx_at(L, phi, dt, i - 1, j)) / (2.0 * p.grid.dx()) +
                     (my_at(L, phi, dt, i, j + 1) - my_at(L, phi, dt, i, j - 1)) / (2.0 * p.grid.dy());
  const double phi_n = gr * (s.h(i, j) + p.bath.b(i, j));
  return phi(i, j) - phi_n + gr * dt * div;
}

State step(const State& s, const Problem& p, double dt, double tol, int max_sweeps) {
  const Grid& g = p.grid;
  const int nx = g.nx(), ny = g.ny();
  const double gr = p.params.g, w = p.params.omega;
  const Lookup L{s, p, g};

  CellField phi(g);
  double scale = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      phi(i, j) = gr * (s.h(i, j) + p.bath.b(i, j));
      scale = std::max(scale, std::abs(phi(i, j)));
    }
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0;; ++sweep) {
    if (sweep == max_sweeps) throw std::runtime_error("reference Gauss-Seidel did not converge");
    double worst = 0.0;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double r0 = height_residual(s, p, dt, phi, i, j);
        const double keep = phi(i, j);
        phi(i, j) = keep + 1.0;
        const double d = height_residual(s, p, dt, phi, i, j) - r0;
        phi(i, j) = keep - r0 / d;
        worst = std::max(worst, std::abs(r0));
      }
    if (worst <= tol * scale) break;
  }

  CellField h1(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) h1(i, j) = phi(i, j) / gr - p.bath.b(i, j);

  const double dx = g.dx(), dy = g.dy();
  auto h1_at = [&](int i, int j) { return L.hn(h1, i, j); };
  auto F = [&](int i, int j) {  // vertical edge i+1/2
    return 0.5 * (h1_at(i, j) * L.u(i, j) + h1_at(i + 1, j) * L.u(i + 1, j)) -
           0.5 * (q_at(L, phi, dt, i, j) + q_at(L, phi, dt, i + 1, j));
  };
  auto G = [&](int i, int j) {  // horizontal edge j+1/2
    return 0.5 * (h1_at(i, j) * L.v(i, j) + h1_at(i, j + 1) * L.v(i, j + 1)) -
           0.5 * (r_at(L, phi, dt, i, j) + r_at(L, phi, dt, i, j + 1));
  };

  const double beta = 1.0 / (2.0 / dx + 2.0 / dy);
  const double cl = gr * p.params.alpha * dt / beta;
  auto lam = [&](int i, int j) {
    return cl * (h1_at(i + 1, j) * L.u(i + 1, j) - h1_at(i, j) * L.u(i, j)) / dx;
  };
  auto theta = [&](int i, int j) {
    return cl * (h1_at(i, j + 1) * L.v(i, j + 1) - h1_at(i, j) * L.v(i, j)) / dy;
  };

  State out(g);
  out.t = s.t + dt;
  out.h = h1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double fe = F(i, j), fw = F(i - 1, j), gn = G(i, j), gs = G(i, j - 1);
      auto up_x = [&](double flux, int il, int j_) {
        return flux >= 0.0 ? std::make_pair(L.u(il, j_), L.v(il, j_)) : std::make_pair(L.u(il + 1, j_), L.v(il + 1, j_));
      };
      auto up_y = [&](double flux, int i_, int jl) {
        return flux >= 0.0 ? std::make_pair(L.u(i_, jl), L.v(i_, jl)) : std::make_pair(L.u(i_, jl + 1), L.v(i_, jl + 1));
      };
      const auto e = up_x(fe, i, j), wv = up_x(fw, i - 1, j);
      const auto n = up_y(gn, i, j), so = up_y(gs, i, j - 1);

      const double h0 = s.h(i, j), hh = h1(i, j);
      const double dphix = (L.phi(phi, i + 1, j) - L.phi(phi, i - 1, j)) / (2.0 * dx);
      const double dphiy = (L.phi(phi, i, j + 1) - L.phi(phi, i, j - 1)) / (2.0 * dy);
      const double dlam = (lam(i, j) - lam(i - 1, j)) / dx;
      const double dthe = (theta(i, j) - theta(i, j - 1)) / dy;
      const double q = q_at(L, phi, dt, i, j), r = r_at(L, phi, dt, i, j);

      const double hu = h0 * s.u(i, j) - dt / dx * (fe * e.first - fw * wv.first) -
                        dt / dy * (gn * n.first - gs * so.first) - dt * hh * (dphix - dlam) +
                        dt * w * (hh * s.v(i, j) - r);
      const double hv = h0 * s.v(i, j) - dt / dx * (fe * e.second - fw * wv.second) -
                        dt / dy * (gn * n.second - gs * so.second) - dt * hh * (dphiy - dthe) +
                        dt * w * (q - hh * s.u(i, j));
      out.u(i, j) = hu / hh;
      out.v(i, j) = hv / hh;
    }
  return out;
}

} // namespace rsw::reference
