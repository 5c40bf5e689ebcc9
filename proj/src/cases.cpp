#include "rsw/cases.hpp"

#include <cmath>
#include <numbers>

#include "rsw/errors.hpp"

namespace rsw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDay = 86400.0;

CaseSpec wb_test1() {
  CaseSpec c;
  c.name = "wb_test1";
  c.description = "lake at rest over a Gaussian bump, 2D";
  c.x0 = 0.0, c.x1 = 10.0, c.y0 = 0.0, c.y1 = 10.0;
  c.nx = c.ny = 100;
  c.bc = BoundaryMode::Extrapolation;
  c.g = 1.0, c.omega = 1.0, c.t_final = 10.0;
  c.b = [](double x, double y) { return 5.0 * std::exp(-0.4 * ((x - 5.0) * (x - 5.0) + (y - 5.0) * (y - 5.0))); };
  c.h = [b = c.b](double x, double y) { return 10.0 - b(x, y); };
  c.u = c.v = [](double, double) { return 0.0; };
  c.steady = true;
  return c;
}

CaseSpec wb_test2() {
  CaseSpec c;
  c.name = "wb_test2";
  c.description = "geostrophic jet with linear height, flat bottom, 1D";
  c.x0 = -0.5, c.x1 = 0.5;
  c.nx = 1000;
  c.strip = true;
  c.bc = BoundaryMode::EquilibriumHold;
  c.g = 9.81, c.omega = 2.0, c.t_final = 10.0;
  const double g = c.g, w = c.omega;
  c.h = [g, w](double x, double) { return 4.0 / g + (w / g) * x; };
  c.b = c.u = [](double, double) { return 0.0; };
  c.v = [](double, double) { return 1.0; };
  c.steady = true;
  return c;
}

CaseSpec wb_test3() {
  CaseSpec c;
  c.name = "wb_test3";
  c.description = "geostrophic jet with Gaussian height dip, flat bottom, 1D";
  c.x0 = -5.0, c.x1 = 5.0;
  c.nx = 1000;
  c.strip = true;
  c.bc = BoundaryMode::EquilibriumHold;
  c.g = 1.0, c.omega = 10.0, c.t_final = 10.0;
  const double g = c.g, w = c.omega;
  c.h = [g](double x, double) { return 2.0 / g - std::exp(-x * x); };
  c.b = c.u = [](double, double) { return 0.0; };
  c.v = [g, w](double x, double) { return 2.0 * g / w * x * std::exp(-x * x); };
  c.discrete_jet = true;
  c.steady = true;
  return c;
}

CaseSpec wb_test4() {
  CaseSpec c;
  c.name = "wb_test4";
  c.description = "geostrophic jet over a sinusoidal bottom, periodic, 1D";
  c.x0 = -5.0, c.x1 = 5.0;
  c.nx = 1000;
  c.strip = true;
  c.bc = BoundaryMode::Periodic;
  c.g = 1.0, c.omega = 1.0, c.t_final = 10.0;
  const double g = c.g, w = c.omega;
  c.h = [](double, double) { return 1.0; };
  c.b = [g, w](double x, double) { return w / g * std::sin(kPi / 5.0 * x); };
  c.u = [](double, double) { return 0.0; };
  c.v = [](double x, double) { return kPi / 5.0 * std::cos(kPi / 5.0 * x); };
  c.discrete_jet = true;
  c.steady = true;
  return c;
}

CaseSpec rossby_adjustment() {
  CaseSpec c;
  c.name = "rossby_adjustment";
  c.description = "Rossby adjustment of a transverse jet, open domain, 1D";
  c.x0 = -8.0, c.x1 = 12.0;
  c.nx = 1000;
  c.strip = true;
  c.bc = BoundaryMode::Extrapolation;
  c.g = 1.0, c.omega = 1.0, c.alpha = 1.0, c.t_final = 5.0;
  c.eta_factor = 5.0;
  c.h = [](double, double) { return 1.0; };
  c.b = c.u = [](double, double) { return 0.0; };
  c.v = [](double x, double) {
    const double d = 1.0 + std::tanh(2.0);
    return 2.0 * (1.0 + std::tanh(2.0 * x + 2.0)) * (1.0 - std::tanh(2.0 * x - 2.0)) / (d * d);
  };
  return c;
}

CaseSpec constant_rotation() {
  CaseSpec c;
  c.name = "constant_rotation";
  c.description = "spatially constant inertial oscillation, periodic, 1D";
  c.x0 = 0.0, c.x1 = 1.0;
  c.nx = 1000;
  c.strip = true;
  c.bc = BoundaryMode::Periodic;
  c.g = 1.0, c.omega = 1.0, c.t_final = 1.0;
  const double h0 = 1.0, u0 = 1.0, v0 = 1.0;
  c.h = [h0](double, double) { return h0; };
  c.b = [](double, double) { return 0.0; };
  c.u = [u0](double, double) { return u0; };
  c.v = [v0](double, double) { return v0; };
  const double w = c.omega;
  c.exact = [=](double t, double, double) {
    return std::array<double, 3>{h0, u0 * std::cos(w * t) + v0 * std::sin(w * t),
                                 v0 * std::cos(w * t) - u0 * std::sin(w * t)};
  };
  return c;
}

CaseSpec eoc_convergence() {
  CaseSpec c;
  c.name = "eoc_convergence";
  c.description = "smooth periodic flow over periodic bottom for convergence studies, 2D";
  c.x0 = 0.0, c.x1 = 1.0, c.y0 = 0.0, c.y1 = 1.0;
  c.nx = c.ny = 128;
  c.bc = BoundaryMode::Periodic;
  c.g = 9.8, c.omega = 1.0, c.t_final = 0.05;
  const double tp = 2.0 * kPi;
  c.h = [tp](double x, double y) { return 10.0 + std::exp(std::sin(tp * x)) * std::cos(tp * y); };
  c.b = [tp](double x, double y) { return std::sin(tp * x) + std::cos(tp * y); };
  c.u = [tp, h = c.h](double x, double y) { return std::sin(std::cos(tp * x)) * std::sin(tp * y) / h(x, y); };
  c.v = [tp, h = c.h](double x, double y) { return std::cos(tp * x) * std::cos(std::sin(tp * y)) / h(x, y); };
  c.eta_factor = 2.5;
  return c;
}

CaseSpec stationary_vortex() {
  CaseSpec c;
  c.name = "stationary_vortex";
  c.description = "low-Froude stationary vortex, open domain, 2D";
  c.x0 = -1.0, c.x1 = 1.0, c.y0 = -1.0, c.y1 = 1.0;
  c.nx = c.ny = 200;
  c.bc = BoundaryMode::Extrapolation;
  const double eps = 0.05;
  c.g = 1.0 / (eps * eps), c.omega = 1.0 / eps, c.t_final = 10.0;
  const double e2 = eps * eps;
  c.h = [e2](double x, double y) {
    const double r = std::hypot(x, y);
    double f;
    if (r < 0.2) {
      f = 2.5 * (1.0 + 5.0 * e2) * r * r;
    } else if (r < 0.4) {
      const double delta = 2.0 * r - 0.3 - 2.5 * r * r;
      const double kappa = 4.0 * std::log(5.0 * r) + 3.5 - 20.0 * r + 12.5 * r * r;
      f = 0.1 * (1.0 + 5.0 * e2) + delta + e2 * kappa;
    } else {
      f = 0.2 * (1.0 - 10.0 * e2 + 20.0 * e2 * std::log(2.0));
    }
    return 1.0 + e2 * f;
  };
  auto gamma = [](double r) {
    if (r < 0.2) return 5.0;
    if (r < 0.4) return 2.0 / r - 5.0;
    return 0.0;
  };
  c.b = [](double, double) { return 0.0; };
  c.u = [eps, gamma](double x, double y) { return -eps * y * gamma(std::hypot(x, y)); };
  c.v = [eps, gamma](double x, double y) { return eps * x * gamma(std::hypot(x, y)); };
  return c;
}

CaseSpec geostrophic_adjustment() {
  CaseSpec c;
  c.name = "geostrophic_adjustment";
  c.description = "adjustment of an elliptical height bump on a flat bottom, 2D";
  c.x0 = -10.0, c.x1 = 10.0, c.y0 = -10.0, c.y1 = 10.0;
  c.nx = c.ny = 200;
  c.bc = BoundaryMode::Extrapolation;
  c.g = 1.0, c.omega = 1.0, c.t_final = 4.0;
  c.h = [](double x, double y) {
    return 1.0 + 0.25 * (1.0 - std::tanh(10.0 * (std::sqrt(2.5 * x * x + 0.4 * y * y) - 1.0)));
  };
  c.b = c.u = c.v = [](double, double) { return 0.0; };
  return c;
}

constexpr double kEarthG = 9.80616;
constexpr double kEarthOmega = 6.147e-5;

CaseSpec shear_flow() {
  CaseSpec c;
  c.name = "shear_flow";
  c.description = "perturbed quasi-geostrophic shear layer, doubly periodic, SI units, 2D";
  const double L = 5.0e6;
  c.x0 = 0.0, c.x1 = L, c.y0 = 0.0, c.y1 = L;
  c.nx = c.ny = 512;
  c.bc = BoundaryMode::Periodic;
  c.g = kEarthG, c.omega = kEarthOmega, c.t_final = 15.0 * kDay;
  const double g = c.g, w = c.omega;
  const double lx = 0.5, sy = 1.0 / 12.0, kappa = 0.1, H0 = 1076.0, Hp = 30.0;
  auto yp = [L](double y) { return std::sin(kPi / L * (y - L / 2.0)) / kPi; };
  auto ypp = [L](double y) { return std::sin(2.0 * kPi / L * (y - L / 2.0)) / (2.0 * kPi); };
  auto env = [=](double y) { return std::exp(-yp(y) * yp(y) / (2.0 * sy * sy) + 0.5); };
  c.h = [=](double x, double y) {
    return H0 - Hp * ypp(y) / sy * env(y) * (1.0 + kappa * std::sin(2.0 * kPi * (x / L) / lx));
  };
  c.u = [=](double x, double y) {
    const double cy = std::cos(2.0 * kPi / L * (y - L / 2.0));
    return g * Hp / (w * sy * L) * (cy - ypp(y) * ypp(y) / (sy * sy)) * env(y) *
           (1.0 + kappa * std::sin(2.0 * kPi * (x / L) / lx));
  };
  c.v = [=](double x, double y) {
    return -g * Hp / (w * L) * (2.0 * kPi * kappa / lx) * ypp(y) / sy * env(y) *
           std::cos(2.0 * kPi * (x / L) / lx);
  };
  c.b = [](double, double) { return 0.0; };
  c.eta_factor = 2.0;
  return c;
}

CaseSpec vortex_pair() {
  CaseSpec c;
  c.name = "vortex_pair";
  c.description = "two co-rotating geostrophic vortices, doubly periodic, SI units, 2D";
  const double L = 5.0e6;
  c.x0 = 0.0, c.x1 = L, c.y0 = 0.0, c.y1 = L;
  c.nx = c.ny = 512;
  c.bc = BoundaryMode::Periodic;
  c.g = kEarthG, c.omega = kEarthOmega, c.t_final = 10.0 * kDay;
  const double g = c.g, w = c.omega;
  const double H0 = 750.0, Hp = 75.0, sig = 3.0 / 40.0 * L;
  const double c1 = 0.4 * L, c2 = 0.6 * L;
  auto zp = [=](double z, double zc) { return L / (kPi * sig) * std::sin(kPi / L * (z - zc)); };
  auto zpp = [=](double z, double zc) { return L / (2.0 * kPi * sig) * std::sin(2.0 * kPi / L * (z - zc)); };
  auto e = [=](double x, double y, double zc) {
    const double a = zp(x, zc), b = zp(y, zc);
    return std::exp(-0.5 * (a * a + b * b));
  };
  c.h = [=](double x, double y) {
    return H0 - Hp * (e(x, y, c1) + e(x, y, c2) - 4.0 * kPi * sig * sig / (L * L));
  };
  c.u = [=](double x, double y) {
    return g * Hp / w * (-(zpp(y, c1) * e(x, y, c1) + zpp(y, c2) * e(x, y, c2)) / sig);
  };
  c.v = [=](double x, double y) {
    return g * Hp / w * ((zpp(x, c1) * e(x, y, c1) + zpp(x, c2) * e(x, y, c2)) / sig);
  };
  c.b = [](double, double) { return 0.0; };
  c.eta_factor = 2.0;
  return c;
}

Padded padded_eval(const Grid& g, const PointFn& f) {
  const int G = Padded::kGhost;
  Padded p(g.nx(), g.ny());
  for (int j = -G; j < g.ny() + G; ++j)
    for (int i = -G; i < g.nx() + G; ++i) p(i, j) = f(g.xc(i), g.yc(j));
  return p;
}

} // namespace

const std::vector<CaseSpec>& case_catalog() {
  static const std::vector<CaseSpec> catalog = {
      wb_test1(),         wb_test2(),        wb_test3(),          wb_test4(),
      rossby_adjustment(), constant_rotation(), eoc_convergence(), stationary_vortex(),
      geostrophic_adjustment(), shear_flow(), vortex_pair(),
  };
  return catalog;
}

const CaseSpec& find_case(const std::string& name) {
  for (const auto& c : case_catalog())
    if (c.name == name) return c;
  throw UnknownCase("unknown case '" + name + "'");
}

Setup build_case(const std::string& name, const CaseOverrides& ov) {
  const CaseSpec& spec = find_case(name);
  const int nx = ov.nx.value_or(spec.nx);
  const int ny = spec.strip ? 3 : ov.ny.value_or(ov.nx.value_or(spec.ny));
  if (nx < 3 || ny < 3) throw ConfigError("resolution must be at least 3 cells per direction");
  const BoundaryMode bc = ov.bc.value_or(spec.bc);
  const double y0 = spec.strip ? 0.0 : spec.y0;
  const double y1 = spec.strip ? 3.0 * (spec.x1 - spec.x0) : spec.y1;
  const Grid grid(nx, ny, spec.x0, spec.x1, y0, y1, bc, spec.strip ? BoundaryMode::Periodic : bc);

  Params par;
  par.g = ov.g.value_or(spec.g);
  par.omega = ov.omega.value_or(spec.omega);
  par.alpha = ov.alpha.value_or(spec.alpha);
  par.zeta = ov.zeta.value_or(par.zeta);
  par.cfl_safety = ov.cfl_safety.value_or(par.cfl_safety);

  State st(project(spec.h, grid), project(spec.u, grid), project(spec.v, grid), 0.0);
  Bathymetry bath{project(spec.b, grid)};

  Frozen fr{padded_eval(grid, spec.h), padded_eval(grid, spec.u), padded_eval(grid, spec.v),
            padded_eval(grid, spec.b), Padded(nx, ny)};
  {
    auto phi = fr.phi.values();
    for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = par.g * (fr.h.values()[k] + fr.b.values()[k]);
  }

  if (spec.discrete_jet) {
    if (par.omega == 0.0) throw ConfigError("discrete jet balance needs a nonzero omega");
    const CellField phi0 = potential(st, bath, par.g);
    const Padded P = ghost_closure(phi0, &fr.phi);
    const double s = 1.0 / (2.0 * grid.dx() * par.omega);
    for (int j = -Padded::kGhost; j < ny + Padded::kGhost; ++j)
      for (int i = -1; i <= nx; ++i) {
        const double v = (P(i + 1, j) - P(i - 1, j)) * s;
        fr.v(i, j) = v;
        if (i >= 0 && i < nx && j >= 0 && j < ny) st.v(i, j) = v;
      }
  }

  par.eta = ov.eta.value_or(spec.eta_factor * st.h.max());
  validate(par);
  if (st.h.min() <= 0.0 || !st.h.all_finite() || !st.u.all_finite() || !st.v.all_finite())
    throw ConfigError("case '" + name + "' produced invalid initial data");

  Setup out{spec.name, Problem{grid, std::move(bath), par, std::move(fr)}, std::move(st), spec.t_final};
  return out;
}

std::optional<State> exact_state(const Setup& setup, double t) {
  const CaseSpec& spec = find_case(setup.name);
  if (spec.steady) {
    State s = setup.state;
    s.t = t;
    return s;
  }
  if (!spec.exact) return std::nullopt;
  const Grid& g = setup.problem.grid;
  State s(g);
  s.t = t;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const auto e = spec.exact(t, g.xc(i), g.yc(j));
      s.h(i, j) = e[0];
      s.u(i, j) = e[1];
      s.v(i, j) = e[2];
    }
  return s;
}

} // namespace rsw
