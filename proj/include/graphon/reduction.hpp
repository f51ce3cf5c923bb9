// Dimension reductions of the graphon system: weighted-degree field and
// beta_eff for the degree-weighted reduction, leading eigenpair for the
// spectral reduction, and the one-dimensional reduced solver.
#pragma once

#include <Eigen/Core>
#include <vector>

#include "graphon/grid.hpp"
#include "graphon/kernels.hpp"
#include "graphon/models.hpp"
#include "graphon/numerics.hpp"

namespace graphon {

// s(y_k) at the grid's eval coordinates.
Eigen::VectorXd degree_field(const Kernel& kernel, const Grid& grid,
                             int quadrature_points = 2000);

// beta_eff = (int s^2) / (int s). Throws if int s is numerically zero.
double beta_eff_from_degree(const Grid& grid, const Eigen::VectorXd& s);
double beta_eff(const Kernel& kernel, const Grid& grid, int quadrature_points = 2000);

struct EigenpairResult {
  double alpha = 0.0;     // leading eigenvalue (magnitude)
  Eigen::VectorXd a;      // eigenfunction, normalized to int a = 1
  int iterations = 0;
  double residual = 0.0;  // ||T a - alpha a||_inf at the returned pair
};

// Leading eigenpair of (T a)(y) = int W(y,y') a(y') dy', from the kernel's
// node matrix and the grid's quadrature weights. Power iteration runs on T^2
// so a spectrum with a +-alpha pair (bipartite) converges like any other;
// the weighted Rayleigh quotient of T^2 is the convergence functional, with
// `tol` relative to its magnitude. After the quotient settles, iteration
// continues until the recombined eigenfunction u + (T u)/alpha (which
// projects out the -alpha component) has a residual below 1e-10 times the
// kernel scale; all thresholds scale with the kernel, so scaling W scales
// alpha and leaves the eigenfunction bit-for-bit stable. The eigenfunction
// is normalized to int a = 1. Throws when the iteration stalls or the final
// residual stays large; both are what a (near-)degenerate leading eigenvalue
// looks like from outside.
EigenpairResult leading_eigenpair(const Eigen::MatrixXd& kernel_matrix,
                                  const Grid& grid, double tol = 1e-12,
                                  int max_iter = 100000);

struct ReducedPoint {
  double kappa = 0.0;
  double value = 0.0;  // equilibrium, or the final state when not converged
  bool converged = false;
  SolveStatus status = SolveStatus::MaxTime;
  double residual = 0.0;
};

// Integrates dx/dt = f(x) + kappa*G(x,x) from the scalar initial value.
ReducedPoint solve_reduced(const Model& model, double kappa, double ic,
                           const IntegratorConfig& cfg);

// One independent reduced solve per kappa.
std::vector<ReducedPoint> reduced_branch_sweep(const Model& model,
                                               const std::vector<double>& kappas,
                                               double ic, const IntegratorConfig& cfg);

}  // namespace graphon
