#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rsw/cases.hpp"
#include "rsw/diagnostics.hpp"
#include "rsw/errors.hpp"

using namespace rsw;

TEST_CASE("every case builds at default resolution") {
  std::set<std::string> names;
  for (const auto& c : case_catalog()) {
    CAPTURE(c.name);
    names.insert(c.name);
    const Setup su = build_case(c.name);
    const Grid& g = su.problem.grid;
    CHECK(g.nx() == c.nx);
    CHECK(g.ny() == (c.strip ? 3 : c.ny));
    CHECK(su.state.h.all_finite());
    CHECK(su.state.u.all_finite());
    CHECK(su.state.v.all_finite());
    CHECK(su.problem.bath.b.all_finite());
    CHECK(su.state.h.min() > 0.0);
    CHECK(su.problem.params.eta > 15.0 / 8.0 * su.state.h.max());
    CHECK(su.t_final == c.t_final);
    if (c.strip) {
      for (int i = 0; i < g.nx(); ++i) {
        CHECK(su.state.h(i, 0) == su.state.h(i, 2));
        CHECK(su.state.v(i, 1) == su.state.v(i, 0));
      }
    }
  }
  CHECK(names == std::set<std::string>{"wb_test1", "wb_test2", "wb_test3", "wb_test4", "rossby_adjustment",
                                       "constant_rotation", "eoc_convergence", "stationary_vortex",
                                       "geostrophic_adjustment", "shear_flow", "vortex_pair"});
}

TEST_CASE("linear-height jet") {
  const Setup su = build_case("wb_test2");
  const Grid& g = su.problem.grid;
  const Params& par = su.problem.params;
  CHECK(par.g == 9.81);
  CHECK(par.omega == 2.0);
  CHECK(g.x0() == -0.5);
  CHECK(g.x1() == 0.5);
  for (int i = 0; i < g.nx(); i += 97) {
    const double x = g.xc(i);
    CHECK(su.state.h(i, 1) == doctest::Approx(4.0 / 9.81 + 2.0 / 9.81 * x).epsilon(1e-14));
    CHECK(su.state.u(i, 1) == 0.0);
    CHECK(su.state.v(i, 1) == 1.0);
    CHECK(su.problem.bath.b(i, 1) == 0.0);
  }
  CHECK(su.problem.frozen.has_value());
}

TEST_CASE("inertial oscillation has an exact solution") {
  const Setup su = build_case("constant_rotation");
  const double w = su.problem.params.omega;
  for (double t : {0.0, 0.3, 1.0}) {
    const auto ex = exact_state(su, t);
    REQUIRE(ex.has_value());
    CHECK(ex->t == t);
    for (std::size_t k = 0; k < ex->u.size(); k += 311) {
      CHECK(ex->h[k] == 1.0);
      CHECK(ex->u[k] == doctest::Approx(std::cos(w * t) + std::sin(w * t)));
      CHECK(ex->v[k] == doctest::Approx(std::cos(w * t) - std::sin(w * t)));
    }
  }
  CHECK_FALSE(exact_state(build_case("shear_flow", CaseOverrides{.nx = 16}), 1.0).has_value());
  const Setup wb = build_case("wb_test4", CaseOverrides{.nx = 20});
  const auto steady = exact_state(wb, 5.0);
  REQUIRE(steady.has_value());
  CHECK(steady->v[7] == wb.state.v[7]);
}

TEST_CASE("steady cases satisfy the discrete jet conditions") {
  for (const char* name : {"wb_test1", "wb_test2", "wb_test3", "wb_test4"}) {
    CAPTURE(name);
    const Setup su = build_case(name);
    const WbResiduals r = wb_residuals(su.state, su.problem);
    CHECK(r.q_residual <= 1e-12);
    CHECK(r.r_residual <= 1e-12);
    if (std::string(name) != "wb_test1") CHECK(r.dy_h <= 1e-12);
    CHECK(r.max_u <= 1e-12);
  }
}

TEST_CASE("overrides") {
  CaseOverrides ov;
  ov.nx = 40;
  ov.omega = 0.5;
  ov.eta = 7.0;
  ov.bc = BoundaryMode::Periodic;
  const Setup su = build_case("geostrophic_adjustment", ov);
  CHECK(su.problem.grid.nx() == 40);
  CHECK(su.problem.grid.ny() == 40);
  CHECK(su.problem.grid.bc_x() == BoundaryMode::Periodic);
  CHECK(su.problem.params.omega == 0.5);
  CHECK(su.problem.params.eta == 7.0);

  const Setup strip = build_case("rossby_adjustment", CaseOverrides{.nx = 50, .ny = 50});
  CHECK(strip.problem.grid.ny() == 3);

  CHECK_THROWS_AS(build_case("wb_test1", CaseOverrides{.nx = 2}), ConfigError);
  CHECK_THROWS_AS(build_case("wb_test1", CaseOverrides{.nx = 10, .g = -1.0}), std::invalid_argument);
  const Setup low = build_case("wb_test1", CaseOverrides{.nx = 10, .eta = 1.0});
  CHECK_THROWS_AS(compute_dt(low.state, low.problem), NonpositiveDt);
}

TEST_CASE("unknown case") {
  CHECK_THROWS_AS(build_case("no_such_case"), UnknownCase);
  CHECK_THROWS_AS(find_case(""), UnknownCase);
}
