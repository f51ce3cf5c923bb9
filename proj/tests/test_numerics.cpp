#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "expected_values.hpp"
#include "graphon/grid.hpp"
#include "graphon/numerics.hpp"

using namespace graphon;

TEST_CASE("composite Simpson integrates cubics exactly at M = 2") {
  const Grid g = uniform_grid(2);
  Eigen::VectorXd f(g.point_count());
  for (int i = 0; i < g.point_count(); ++i) {
    const double y = g.nodes[i];
    f[i] = y * y * y - 2.0 * y * y + 3.0 * y - 1.0;
  }
  const double exact = 1.0 / 4.0 - 2.0 / 3.0 + 3.0 / 2.0 - 1.0;
  CHECK(std::abs(integrate(g, f) - exact) <= 1e-14);
}

TEST_CASE("composite Simpson is fourth order on exp") {
  auto err = [](int M) {
    const Grid g = uniform_grid(M);
    Eigen::VectorXd f(g.point_count());
    for (int i = 0; i < g.point_count(); ++i) f[i] = std::exp(g.nodes[i]);
    return std::abs(integrate(g, f) - expected::e_minus_1);
  };
  const double e8 = err(8);
  const double e16 = err(16);
  CHECK(e8 < 3e-6);
  CHECK(e16 < 2e-7);
  CHECK(e8 / e16 > 15.0);
  CHECK(e8 / e16 < 17.0);
}

TEST_CASE("RK4 halving the step shrinks the error by about 16 on dx/dt = -x") {
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = -x; };
  auto final_error = [&](double dt) {
    Eigen::VectorXd x(1);
    x[0] = 1.0;
    const long n = std::lround(1.0 / dt);
    for (long i = 0; i < n; ++i) rk4_step(rhs, x, i * dt, dt);
    return std::abs(x[0] - expected::exp_minus_one);
  };
  const double factor = final_error(0.1) / final_error(0.05);
  CHECK(factor >= 14.0);
  CHECK(factor <= 18.0);
}

TEST_CASE("equilibrium detection stops early with a small residual") {
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    out = -2.0 * (x.array() - 3.0);
  };
  Eigen::VectorXd x0(1);
  x0[0] = 0.0;
  IntegratorConfig cfg;
  cfg.t_max = 100.0;
  const EquilibriumResult r = integrate_to_equilibrium(rhs, x0, cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.converged);
  CHECK(r.time < 20.0);
  CHECK(r.residual < cfg.eq_tol);
  CHECK(std::abs(r.state[0] - 3.0) < 1e-8);
  CHECK(r.min_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.max_value <= 3.0 + 1e-9);
}

TEST_CASE("finite-time blowup is reported as a status, not an exception") {
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    out = x.array().square();
  };
  Eigen::VectorXd x0(1);
  x0[0] = 2.0;  // exact solution escapes at t = 0.5
  IntegratorConfig cfg;
  cfg.t_max = 5.0;
  const EquilibriumResult r = integrate_to_equilibrium(rhs, x0, cfg);
  CHECK(r.status == SolveStatus::Blowup);
  CHECK(!r.converged);
  CHECK(r.time <= 1.0);
  CHECK(std::isnan(r.residual));
}

TEST_CASE("rk4_step throws on a non-finite derivative") {
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    out = (1.0 / x.array()).matrix();
  };
  Eigen::VectorXd x(1);
  x[0] = 0.0;
  CHECK_THROWS_AS(rk4_step(rhs, x, 0.0, 0.1), BlowupError);
}

TEST_CASE("snapshots fire at t = 0 and every stride up to t_max") {
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = -x; };
  Eigen::VectorXd x0(1);
  x0[0] = 1.0;
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.t_max = 0.5;
  cfg.eq_tol = 1e-300;  // never converges; runs the whole horizon
  std::vector<double> times;
  const EquilibriumResult r = integrate_to_equilibrium(
      rhs, x0, cfg, [&](double t, const Eigen::VectorXd&) { times.push_back(t); }, 0.1);
  CHECK(r.status == SolveStatus::MaxTime);
  REQUIRE(times.size() == 6);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("snapshot interval must be a positive multiple of dt") {
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = -x; };
  Eigen::VectorXd x0(1);
  x0[0] = 1.0;
  IntegratorConfig cfg;
  auto snap = [](double, const Eigen::VectorXd&) {};
  CHECK_THROWS_AS(integrate_to_equilibrium(rhs, x0, cfg, snap, 0.035),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_to_equilibrium(rhs, x0, cfg, snap, 0.0),
                  std::invalid_argument);
}

TEST_CASE("integrator configuration is validated") {
  IntegratorConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = IntegratorConfig{};
  cfg.t_max = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = IntegratorConfig{};
  cfg.eq_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("trajectory statistics cover the signed range") {
  // x' = -x from -2: the state rises toward 0, so max_abs comes from the IC.
  auto rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = -x; };
  Eigen::VectorXd x0(1);
  x0[0] = -2.0;
  IntegratorConfig cfg;
  cfg.t_max = 50.0;
  const EquilibriumResult r = integrate_to_equilibrium(rhs, x0, cfg);
  CHECK(r.max_abs == doctest::Approx(2.0));
  CHECK(r.min_value == doctest::Approx(-2.0));
  CHECK(r.max_value <= 1e-6);
}
