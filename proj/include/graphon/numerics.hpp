// Classical fixed-step RK4 time stepping with equilibrium detection on the
// right-hand side, shared by the full graphon solver, the finite-network
// solver, and the one-dimensional reduced solvers.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace graphon {

struct IntegratorConfig {
  double dt = 0.01;
  double t_max = 500.0;
  double eq_tol = 1e-9;  // infinity-norm threshold on the right-hand side

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (!(eq_tol > 0.0)) throw std::invalid_argument("equilibrium tolerance must be positive");
  }
};

struct BlowupError : std::runtime_error {
  explicit BlowupError(double t)
      : std::runtime_error("numerical blowup (NaN/inf) at t = " + std::to_string(t)), time(t) {}
  double time;
};

enum class SolveStatus { Converged, MaxTime, Blowup };

struct EquilibriumResult {
  Eigen::VectorXd state;
  SolveStatus status = SolveStatus::MaxTime;
  bool converged = false;
  double time = 0.0;       // when integration stopped
  double residual = 0.0;   // ||rhs||_inf at the final state
  // trajectory statistics, for boundedness and invariant-interval checks
  double max_abs = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
};

// One classical RK4 step. `rhs(x, dxdt)` must fill dxdt. Throws BlowupError
// tagged with `t` if the derivative turns non-finite.
template <class RHS>
void rk4_step(RHS&& rhs, Eigen::VectorXd& x, double t, double dt) {
  Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
  Eigen::VectorXd xt(x.size());
  rhs(x, k1);
  if (!k1.allFinite()) throw BlowupError(t);
  xt = x + (0.5 * dt) * k1;
  rhs(xt, k2);
  xt = x + (0.5 * dt) * k2;
  rhs(xt, k3);
  xt = x + dt * k3;
  rhs(xt, k4);
  if (!k2.allFinite() || !k3.allFinite() || !k4.allFinite()) throw BlowupError(t);
  x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Integrates until ||rhs||_inf < eq_tol or t_max, whichever first. The
// residual is checked at step boundaries using the step's own k1 evaluation,
// so equilibrium detection costs nothing extra. Optional `snapshot` is
// invoked at t = 0 and every `snapshot_dt` (must be a step multiple).
template <class RHS>
EquilibriumResult integrate_to_equilibrium(
    RHS&& rhs, const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
    const std::function<void(double, const Eigen::VectorXd&)>& snapshot = nullptr,
    double snapshot_dt = 0.0) {
  cfg.validate();
  long snap_stride = 0;
  if (snapshot) {
    if (!(snapshot_dt > 0.0)) throw std::invalid_argument("snapshot interval must be positive");
    snap_stride = std::lround(snapshot_dt / cfg.dt);
    if (snap_stride < 1 || std::abs(snap_stride * cfg.dt - snapshot_dt) > 1e-9)
      throw std::invalid_argument("snapshot interval must be a multiple of dt");
  }

  EquilibriumResult res;
  res.state = x0;
  res.max_abs = x0.size() ? x0.cwiseAbs().maxCoeff() : 0.0;
  res.min_value = x0.size() ? x0.minCoeff() : 0.0;
  res.max_value = x0.size() ? x0.maxCoeff() : 0.0;

  const long n_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.dt - 1e-12));
  Eigen::VectorXd k1(x0.size()), k2(x0.size()), k3(x0.size()), k4(x0.size());
  Eigen::VectorXd xt(x0.size());
  Eigen::VectorXd& x = res.state;

  for (long step = 0;; ++step) {
    const double t = step * cfg.dt;
    if (!x.allFinite()) {
      res.status = SolveStatus::Blowup;
      res.time = t;
      res.residual = std::numeric_limits<double>::quiet_NaN();
      return res;
    }
    rhs(x, k1);
    if (!k1.allFinite()) {
      res.status = SolveStatus::Blowup;
      res.time = t;
      res.residual = std::numeric_limits<double>::quiet_NaN();
      return res;
    }
    const double resid = k1.size() ? k1.cwiseAbs().maxCoeff() : 0.0;
    if (snapshot && step % snap_stride == 0) snapshot(t, x);
    if (resid < cfg.eq_tol) {
      res.status = SolveStatus::Converged;
      res.converged = true;
      res.time = t;
      res.residual = resid;
      return res;
    }
    if (step >= n_steps) {
      res.status = SolveStatus::MaxTime;
      res.time = t;
      res.residual = resid;
      return res;
    }
    // finish the RK4 step with the k1 already in hand
    xt = x + (0.5 * cfg.dt) * k1;
    rhs(xt, k2);
    xt = x + (0.5 * cfg.dt) * k2;
    rhs(xt, k3);
    xt = x + cfg.dt * k3;
    rhs(xt, k4);
    x += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    res.max_abs = std::max(res.max_abs, x.cwiseAbs().maxCoeff());
    res.min_value = std::min(res.min_value, x.minCoeff());
    res.max_value = std::max(res.max_value, x.maxCoeff());
  }
}

}  // namespace graphon
