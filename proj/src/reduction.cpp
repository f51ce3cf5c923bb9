#include "graphon/reduction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphon {

Eigen::VectorXd degree_field(const Kernel& kernel, const Grid& grid,
                             int quadrature_points) {
  const int n = grid.point_count();
  Eigen::VectorXd s(n);
  for (int k = 0; k < n; ++k)
    s[k] = weighted_degree(kernel, grid.eval_nodes[k], quadrature_points);
  return s;
}

double beta_eff_from_degree(const Grid& grid, const Eigen::VectorXd& s) {
  const double den = integrate(grid, s);
  if (std::abs(den) < 1e-14)
    throw std::domain_error("degenerate kernel: weighted degree integrates to zero");
  return integrate(grid, s.cwiseProduct(s)) / den;
}

double beta_eff(const Kernel& kernel, const Grid& grid, int quadrature_points) {
  return beta_eff_from_degree(grid, degree_field(kernel, grid, quadrature_points));
}

EigenpairResult leading_eigenpair(const Eigen::MatrixXd& kernel_matrix,
                                  const Grid& grid, double tol, int max_iter) {
  const int n = grid.point_count();
  if (kernel_matrix.rows() != n || kernel_matrix.cols() != n)
    throw std::invalid_argument("kernel matrix does not match grid size");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 2) throw std::invalid_argument("max_iter must be at least 2");
  const double scale = kernel_matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw std::runtime_error("kernel matrix is identically zero");

  const Eigen::VectorXd& w = grid.weights;
  auto wnorm = [&](const Eigen::VectorXd& v) {
    return std::sqrt(v.cwiseAbs2().dot(w));
  };

  Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
  u /= wnorm(u);
  Eigen::VectorXd tu(n), ttu(n), cand(n);
  double rayleigh2 = 0.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool settled = false;

  // Once the Rayleigh quotient settles (it converges at twice the rate of the
  // iterate), keep iterating until the recombined eigenfunction's residual is
  // tight too; the quotient alone can stop well before the vector does when
  // the spectral gap is modest (the two-community kernel is the worst case).
  // Both thresholds are relative to the kernel scale so that scaling W leaves
  // the stopping iteration, and hence the eigenfunction, unchanged.
  const double target = 1e-10 * scale;
  double best_residual = std::numeric_limits<double>::infinity();
  double best_alpha = 0.0;
  Eigen::VectorXd best_a;
  int best_it = 0;

  for (int it = 1; it <= max_iter; ++it) {
    tu.noalias() = kernel_matrix * w.cwiseProduct(u);
    rayleigh2 = tu.cwiseAbs2().dot(w);  // <u, T^2 u>_w with ||u||_w = 1
    iterations = it;
    if (!settled && std::isfinite(prev) &&
        std::abs(rayleigh2 - prev) < tol * std::max(rayleigh2, scale * scale * 1e-300))
      settled = true;
    prev = rayleigh2;

    if (settled) {
      const double alpha = std::sqrt(std::max(rayleigh2, 0.0));
      if (alpha < 1e-13 * scale)
        throw std::runtime_error("leading eigenvalue is numerically zero");
      // u is (close to) an eigenvector of T^2; split off the +alpha
      // component. If the recombination cancels (u was a pure -alpha vector,
      // impossible for nonnegative kernels), keep u; the residual gate below
      // rejects it.
      cand = u + tu / alpha;
      if (wnorm(cand) < 1e-6) cand = u;
      const double mass = cand.dot(w);
      if (std::abs(mass) < 1e-12 * wnorm(cand))
        throw std::runtime_error(
            "leading eigenfunction integrates to zero and cannot be normalized");
      cand /= mass;
      const double residual =
          (kernel_matrix * w.cwiseProduct(cand) - alpha * cand).cwiseAbs().maxCoeff();
      if (residual < best_residual) {
        best_residual = residual;
        best_alpha = alpha;
        best_a = cand;
        best_it = it;
      }
      // Stop on a tight eigenpair, or when 30 rounds brought no improvement.
      if (best_residual <= target || it - best_it >= 30) break;
    }

    ttu.noalias() = kernel_matrix * w.cwiseProduct(tu);
    const double nrm = wnorm(ttu);
    if (nrm == 0.0)
      throw std::runtime_error("power iteration collapsed to zero (nilpotent kernel matrix)");
    u = ttu / nrm;
  }
  if (!settled)
    throw std::runtime_error(
        "power iteration did not settle; leading eigenvalue is degenerate or "
        "nearly so");

  EigenpairResult res;
  res.alpha = best_alpha;
  res.a = best_a;
  res.iterations = iterations;
  res.residual = best_residual;
  if (!(res.residual <= 1e-6 * scale))
    throw std::runtime_error(
        "eigenpair residual did not close; leading eigenvalue is degenerate or "
        "nearly so");
  return res;
}

ReducedPoint solve_reduced(const Model& model, double kappa, double ic,
                           const IntegratorConfig& cfg) {
  auto rhs = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    out.resize(1);
    out[0] = model.reduced_rhs(kappa, x[0]);
  };
  Eigen::VectorXd x0(1);
  x0[0] = ic;
  EquilibriumResult r = integrate_to_equilibrium(rhs, x0, cfg);
  ReducedPoint p;
  p.kappa = kappa;
  p.value = r.state[0];
  p.converged = r.converged;
  p.status = r.status;
  p.residual = r.residual;
  return p;
}

std::vector<ReducedPoint> reduced_branch_sweep(const Model& model,
                                               const std::vector<double>& kappas,
                                               double ic, const IntegratorConfig& cfg) {
  std::vector<ReducedPoint> out;
  out.reserve(kappas.size());
  for (double kappa : kappas) out.push_back(solve_reduced(model, kappa, ic, cfg));
  return out;
}

}  // namespace graphon
