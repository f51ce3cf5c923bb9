#include "graphon/full_system.hpp"

#include <cmath>
#include <stdexcept>

namespace graphon {

namespace {

bool is_uniform(const Grid& grid) { return grid.pieces.size() == 1; }

// q*M as an exact integer band half-width, or -1 if q does not align.
int band_halfwidth(const Kernel& kernel, const Grid& grid) {
  if (!is_uniform(grid)) return -1;
  const int M = grid.intervals;
  const double pos = kernel.q * M;
  const long m = std::lround(pos);
  if (std::abs(pos - m) > 1e-9) return -1;
  if (m < 1 || 2 * m >= M) return -1;
  return static_cast<int>(m);
}

}  // namespace

Eigen::MatrixXd kernel_matrix(const Kernel& kernel, const Grid& grid) {
  const int n = grid.point_count();
  Eigen::MatrixXd K(n, n);

  if (kernel.family == KernelFamily::Ring || kernel.family == KernelFamily::SmallWorld) {
    const int m = band_halfwidth(kernel, grid);
    if (m > 0) {
      // Index-aware assembly: nodes at exact arc distance q get the midpoint
      // of the inside/outside values, which makes composite Simpson exact
      // for these piecewise-constant rows.
      const int M = grid.intervals;
      const double in = kernel.family == KernelFamily::Ring ? 1.0 : 1.0 - kernel.p;
      const double out = kernel.family == KernelFamily::Ring ? 0.0 : kernel.p;
      const double edge = 0.5 * (in + out);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l <= k; ++l) {
          const int diff = (k - l) % M;
          const int d = std::min(diff, M - diff);
          const double v = d < m ? in : (d == m ? edge : out);
          K(k, l) = v;
          K(l, k) = v;
        }
      }
      return K;
    }
  }

  for (int k = 0; k < n; ++k) {
    for (int l = 0; l <= k; ++l) {
      const double v = kernel.eval(grid.eval_nodes[k], grid.eval_nodes[l]);
      K(k, l) = v;
      K(l, k) = v;
    }
  }
  return K;
}

// ---------------------------------------------------------------- apply ----

KernelApply::KernelApply(const Kernel& kernel, const Grid& grid) : grid_(&grid) {
  const int n = grid.point_count();
  switch (kernel.family) {
    case KernelFamily::ER:
      kind_ = Kind::Constant;
      const_value_ = kernel.p;
      break;
    case KernelFamily::Ring:
    case KernelFamily::SmallWorld: {
      const int m = band_halfwidth(kernel, grid);
      if (m > 0) {
        kind_ = Kind::Band;
        band_m_ = m;
        band_in_ = kernel.family == KernelFamily::Ring ? 1.0 : 1.0 - kernel.p;
        band_out_ = kernel.family == KernelFamily::Ring ? 0.0 : kernel.p;
      }
      break;
    }
    case KernelFamily::Modular:
    case KernelFamily::Bipartite: {
      if (grid.pieces.size() == 2) {
        kind_ = Kind::Block;
        if (kernel.family == KernelFamily::Modular) {
          block_[0][0] = block_[1][1] = kernel.p_in;
          block_[0][1] = block_[1][0] = kernel.p_out;
        } else {
          block_[0][0] = block_[1][1] = 0.0;
          block_[0][1] = block_[1][0] = kernel.p;
        }
      }
      break;
    }
    case KernelFamily::PowerLaw: {
      if (!is_uniform(grid)) break;
      kind_ = Kind::Clip;
      clip_C_ = kernel.C;
      clip_nu_ = kernel.nu;
      clip_split_.resize(n);
      ypow_.resize(n);
      ypow_[0] = 0.0;  // y = 0 is always inside the clipped region
      for (int l = 1; l < n; ++l) ypow_[l] = std::pow(grid.nodes[l], kernel.nu);
      // Largest l with W(y_k, y_l) clipped to 1; nonincreasing in k, so a
      // two-pointer sweep matches the pointwise eval decisions exactly.
      int t = n - 1;
      for (int k = 0; k < n; ++k) {
        while (t > 0 && kernel.eval(grid.nodes[k], grid.nodes[t]) < 1.0) --t;
        clip_split_[k] = t;
      }
      break;
    }
  }
}

void KernelApply::apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  const int n = grid_->point_count();
  if (v.size() != n) throw std::invalid_argument("apply: vector size does not match grid");
  out.resize(n);
  const Eigen::VectorXd& w = grid_->weights;

  switch (kind_) {
    case Kind::None:
      throw std::logic_error("structured kernel apply unavailable for this kernel/grid");

    case Kind::Constant: {
      out.setConstant(const_value_ * w.dot(v));
      return;
    }

    case Kind::Band: {
      const int M = grid_->intervals;  // positions 0..M-1; node M shares position 0
      const int m = band_m_;
      scratch_a_.resize(M);  // weighted values folded onto circle positions
      for (int p2 = 0; p2 < M; ++p2) scratch_a_[p2] = w[p2] * v[p2];
      scratch_a_[0] += w[M] * v[M];
      scratch_b_.resize(2 * M + 1);  // doubled prefix sums
      scratch_b_[0] = 0.0;
      for (int i = 0; i < 2 * M; ++i) scratch_b_[i + 1] = scratch_b_[i] + scratch_a_[i % M];
      const double total = scratch_b_[M];
      for (int k = 0; k < n; ++k) {
        const int pk = k % M;
        // strict interior of the band: positions pk-m+1 .. pk+m-1 (mod M),
        // a window of 2m-1 < M positions starting inside [0, M) so that the
        // doubled prefix covers it
        const int a = (pk - m + 1 + M) % M;
        const int b = a + 2 * m - 2;
        const double inner = scratch_b_[b + 1] - scratch_b_[a];
        const double edges = 0.5 * (scratch_a_[(pk - m + M) % M] + scratch_a_[(pk + m) % M]);
        out[k] = band_out_ * total + (band_in_ - band_out_) * (inner + edges);
      }
      return;
    }

    case Kind::Block: {
      const auto& A = grid_->pieces[0];
      const auto& B = grid_->pieces[1];
      double SA = 0.0, SB = 0.0;
      for (int l = A.first; l <= A.second; ++l) SA += w[l] * v[l];
      for (int l = B.first; l <= B.second; ++l) SB += w[l] * v[l];
      for (int k = A.first; k <= A.second; ++k) out[k] = block_[0][0] * SA + block_[0][1] * SB;
      for (int k = B.first; k <= B.second; ++k) out[k] = block_[1][0] * SA + block_[1][1] * SB;
      return;
    }

    case Kind::Clip: {
      // prefix sums of w*v and of w*v*y^nu (the latter defined from l = 1)
      scratch_a_.resize(n + 1);
      scratch_b_.resize(n + 1);
      scratch_a_[0] = 0.0;
      scratch_b_[0] = 0.0;
      for (int l = 0; l < n; ++l) {
        const double wv = w[l] * v[l];
        scratch_a_[l + 1] = scratch_a_[l] + wv;
        scratch_b_[l + 1] = scratch_b_[l] + (l == 0 ? 0.0 : wv * ypow_[l]);
      }
      for (int k = 0; k < n; ++k) {
        const int t = clip_split_[k];
        double val = scratch_a_[t + 1];
        if (t < n - 1) {
          const double tail = scratch_b_[n] - scratch_b_[t + 1];
          val += clip_C_ * ypow_[k] * tail;
        }
        out[k] = val;
      }
      return;
    }
  }
}

// ------------------------------------------------------------------ rhs ----

FullRhs::FullRhs(const Model& model, double D, const Grid& grid,
                 const KernelApply* apply, const Eigen::MatrixXd* dense)
    : model_(&model), D_(D), grid_(&grid), apply_(apply), dense_(dense) {
  use_structured_ = apply_ && apply_->available();
  if (!use_structured_ && !dense_)
    throw std::invalid_argument("full rhs needs a structured apply or a dense kernel matrix");
  const int n = grid.point_count();
  if (dense_ && (dense_->rows() != n || dense_->cols() != n))
    throw std::invalid_argument("kernel matrix does not match grid size");
}

void FullRhs::operator()(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  const int n = grid_->point_count();
  if (x.size() != n) throw std::invalid_argument("state size does not match grid");
  out.resize(n);
  for (int k = 0; k < n; ++k) out[k] = model_->f(x[k]);
  if (D_ == 0.0) return;

  if (model_->name == ModelName::Mutualistic) {
    coupling_mutualistic(x, out);
    return;
  }
  if (use_structured_ && model_->separable()) {
    vbuf_.resize(n);
    for (int k = 0; k < n; ++k) vbuf_[k] = model_->psi(x[k]);
    apply_->apply(vbuf_, abuf_);
    for (int k = 0; k < n; ++k) out[k] += D_ * model_->phi(x[k]) * abuf_[k];
    return;
  }
  coupling_dense(x, out);
}

void FullRhs::coupling_dense(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  const int n = grid_->point_count();
  const Eigen::VectorXd& w = grid_->weights;
  if (model_->separable()) {
    vbuf_.resize(n);
    for (int k = 0; k < n; ++k) vbuf_[k] = w[k] * model_->psi(x[k]);
    abuf_.noalias() = (*dense_) * vbuf_;
    for (int k = 0; k < n; ++k) out[k] += D_ * model_->phi(x[k]) * abuf_[k];
    return;
  }
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int l = 0; l < n; ++l) acc += w[l] * (*dense_)(k, l) * model_->G(x[k], x[l]);
    out[k] += D_ * acc;
  }
}

void FullRhs::coupling_mutualistic(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  const int n = grid_->point_count();
  const double H = model_->mut_H, E = model_->mut_E, Dm = model_->mut_D;
  const double xmax_abs = x.cwiseAbs().maxCoeff();
  if (xmax_abs == 0.0) return;
  const double cmin = Dm + E * x.minCoeff();
  const double ratio = cmin > 0.0 ? H * xmax_abs / cmin : 1.0;

  if (use_structured_ && ratio < 0.6 && cmin > 0.2 * Dm) {
    // Truncated Neumann series: 1/(c_k + H x_l) expanded in H x_l / c_k.
    // S_k = (x_k / c_k) * sum_m (-H/c_k)^m * (W (w*x^{m+1}))_k, truncated
    // once the geometric tail is below ~1e-14 relative.
    int order = 8;
    if (ratio > 1e-3)
      order = std::min(64, std::max(8, static_cast<int>(std::ceil(std::log(1e-14) / std::log(ratio)))));
    vbuf_ = (Dm + E * x.array()).cwiseInverse().matrix();  // 1/c
    pbuf_ = x;                                             // x^{m+1}
    hornbuf_ = vbuf_;                                      // c^{-(m+1)}
    Eigen::VectorXd& acc = abuf_;
    acc.setZero(n);
    double coeff = 1.0;  // (-H)^m
    for (int m = 0; m <= order; ++m) {
      apply_->apply(pbuf_, tbuf_);
      acc.array() += coeff * tbuf_.array() * hornbuf_.array();
      if (m < order) {
        pbuf_.array() *= x.array();
        hornbuf_.array() *= vbuf_.array();
        coeff *= -H;
      }
    }
    out.array() += D_ * x.array() * acc.array();
    return;
  }

  if (!dense_)
    throw std::runtime_error("mutualistic coupling fallback requires the dense kernel matrix");
  const Eigen::VectorXd& w = grid_->weights;
  for (int k = 0; k < n; ++k) {
    const double ck = Dm + E * x[k];
    const double gk = D_ * x[k];
    if (gk == 0.0) continue;
    const auto t = x.array() / (ck + H * x.array());
    out[k] += gk * (dense_->row(k).transpose().array() * w.array() * t).sum();
  }
}

// ---------------------------------------------------------------- solve ----

EquilibriumResult solve_full(const Model& model, double D, const Grid& grid,
                             const KernelApply* apply, const Eigen::MatrixXd* dense,
                             double ic_value, const IntegratorConfig& cfg,
                             const FullSolveOptions& options) {
  FullRhs rhs(model, D, grid, apply, dense);
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(grid.point_count(), ic_value);
  return integrate_to_equilibrium(rhs, x0, cfg, options.snapshot, options.snapshot_dt);
}

Grid finite_network_grid(int N) {
  if (N < 1) throw std::invalid_argument("node count must be >= 1");
  Grid g;
  g.nodes.resize(N);
  for (int i = 0; i < N; ++i) g.nodes[i] = (i + 0.5) / N;
  g.eval_nodes = g.nodes;
  g.weights = Eigen::VectorXd::Constant(N, 1.0 / N);
  g.pieces = {{0, N - 1}};
  g.intervals = N;
  return g;
}

EquilibriumResult solve_finite_network(const Model& model, double D,
                                       const Eigen::MatrixXd& WN, double ic_value,
                                       const IntegratorConfig& cfg,
                                       const FullSolveOptions& options) {
  Grid g = finite_network_grid(static_cast<int>(WN.rows()));
  FullRhs rhs(model, D, g, nullptr, &WN);
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(g.point_count(), ic_value);
  return integrate_to_equilibrium(rhs, x0, cfg, options.snapshot, options.snapshot_dt);
}

// ----------------------------------------------------------- observables ---

double gbb_observable(const Grid& grid, const Eigen::VectorXd& s,
                      const Eigen::VectorXd& x) {
  const double den = integrate(grid, s);
  if (std::abs(den) < 1e-14)
    throw std::domain_error("degenerate kernel: weighted degree integrates to zero");
  return integrate(grid, s.cwiseProduct(x)) / den;
}

double spectral_observable(const Grid& grid, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& x) {
  if (std::abs(integrate(grid, a) - 1.0) > 1e-8)
    throw std::invalid_argument("eigenfunction must be normalized to integral 1");
  return integrate(grid, a.cwiseProduct(x));
}

BoundednessReport boundedness_check(const Model& model, double x0_inf_norm,
                                    double observed_max_abs, double T,
                                    bool trajectory_finite) {
  BoundednessReport rep;
  rep.finite = trajectory_finite && std::isfinite(observed_max_abs);
  rep.bound = 4.0 * x0_inf_norm +
              2.0 * (std::abs(model.f(0.0)) + std::abs(model.G(0.0, 0.0))) * T;
  rep.observed = observed_max_abs;
  rep.within_bound = rep.finite && observed_max_abs <= rep.bound;
  return rep;
}

}  // namespace graphon
