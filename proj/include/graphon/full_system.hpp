// The graphon integro-differential system on a quadrature grid:
//   dx_k/dt = f(x_k) + D * sum_l w_l W(y_k, y_l) G(x_k, x_l)
// with dense and structured (O(M)) coupling evaluation, plus the finite
// N-node variant driven by a step-graphon matrix with uniform 1/N weights.
#pragma once

#include <Eigen/Core>
#include <functional>

#include "graphon/grid.hpp"
#include "graphon/kernels.hpp"
#include "graphon/models.hpp"
#include "graphon/numerics.hpp"

namespace graphon {

// Kernel values at grid nodes. Ring/SmallWorld on uniform grids with q*M
// integer are assembled index-aware: band-edge entries carry the midpoint of
// the inside/outside values, which makes composite Simpson exactly correct
// for the piecewise-constant rows (row degrees become exactly 2q). Other
// families evaluate pointwise at the grid's one-sided eval coordinates.
Eigen::MatrixXd kernel_matrix(const Kernel& kernel, const Grid& grid);

// Structured evaluator for v |-> (sum_l w_l W(y_k,y_l) v_l)_k, O(M) per call
// for all six families. Falls back to "unavailable" (dense matrix required)
// on grids it does not recognize.
class KernelApply {
 public:
  KernelApply(const Kernel& kernel, const Grid& grid);

  bool available() const { return kind_ != Kind::None; }
  // out_k = sum_l w_l W(y_k, y_l) v_l
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const;

 private:
  enum class Kind { None, Constant, Band, Block, Clip };
  Kind kind_ = Kind::None;
  const Grid* grid_ = nullptr;
  // Constant (ER): value p. Band (Ring/SmallWorld): half-width in index
  // units, in-band/off-band values. Block (Modular/Bipartite): 2x2 block
  // value table. Clip (PowerLaw): per-row clip split index and y^nu powers.
  double const_value_ = 0.0;
  int band_m_ = 0;
  double band_in_ = 0.0, band_out_ = 0.0;
  double block_[2][2] = {{0, 0}, {0, 0}};
  Eigen::VectorXi clip_split_;   // per row k: largest l with W(k,l) == 1
  Eigen::VectorXd ypow_;         // y_l^nu (entry 0 unused)
  double clip_C_ = 0.0, clip_nu_ = 0.0;
  mutable Eigen::VectorXd scratch_a_, scratch_b_;
};

// Right-hand side of the full system. Uses the structured path for separable
// couplings, a truncated Neumann series for the Mutualistic coupling (exact
// to ~1e-13 relative, with a dense fallback), and the dense double loop
// otherwise. `dense` may be null only if the structured path is available
// and the coupling is separable.
class FullRhs {
 public:
  FullRhs(const Model& model, double D, const Grid& grid,
          const KernelApply* apply, const Eigen::MatrixXd* dense);

  void operator()(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;

 private:
  void coupling_dense(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;
  void coupling_mutualistic(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;

  const Model* model_;
  double D_;
  const Grid* grid_;
  const KernelApply* apply_;
  const Eigen::MatrixXd* dense_;
  bool use_structured_;
  mutable Eigen::VectorXd vbuf_, abuf_, pbuf_, hornbuf_, tbuf_;
};

struct FullSolveOptions {
  std::function<void(double, const Eigen::VectorXd&)> snapshot;
  double snapshot_dt = 0.0;
};

// Integrates the full system from a constant initial field.
EquilibriumResult solve_full(const Model& model, double D, const Grid& grid,
                             const KernelApply* apply, const Eigen::MatrixXd* dense,
                             double ic_value, const IntegratorConfig& cfg,
                             const FullSolveOptions& options = {});

// Finite N-node system: dx_i/dt = f(x_i) + (D/N) sum_j (W_N)_ij G(x_i,x_j).
// Realized by the same right-hand side with uniform weights 1/N and W_N
// entries in place of kernel samples.
EquilibriumResult solve_finite_network(const Model& model, double D,
                                       const Eigen::MatrixXd& WN, double ic_value,
                                       const IntegratorConfig& cfg,
                                       const FullSolveOptions& options = {});

// Grid carrying the N-node system's cell midpoints and uniform weights.
Grid finite_network_grid(int N);

// L(x) = (int s*x) / (int s). Throws on an identically-zero degree field.
double gbb_observable(const Grid& grid, const Eigen::VectorXd& s,
                      const Eigen::VectorXd& x);

// R = int a*x for the leading eigenfunction a, which must satisfy int a = 1.
double spectral_observable(const Grid& grid, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& x);

struct BoundednessReport {
  bool finite = false;
  bool within_bound = false;
  double bound = 0.0;     // 4*||x0||_inf + 2*(|f(0)| + |G(0,0)|)*T
  double observed = 0.0;  // max_t ||x(t)||_inf
};

// Empirical check of the a-priori bound max_t ||x||_inf <= 4||x0||_inf + C,
// C = 2(|f(0)| + |G(0,0)|)T. Failures are reported, not thrown.
BoundednessReport boundedness_check(const Model& model, double x0_inf_norm,
                                    double observed_max_abs, double T,
                                    bool trajectory_finite);

}  // namespace graphon
