// The experiment drivers: full-vs-reduced equilibrium sweeps over the
// effective coupling, error curves and integrals, finite-network convergence
// ladders, and CSV/JSON/SVG emission.
#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphon/config.hpp"
#include "graphon/full_system.hpp"
#include "graphon/reduction.hpp"

namespace graphon {

struct SweepRecord {
  std::string model, kernel, reduction, ic;
  double D = 0.0;
  double kappa = 0.0;
  double full_observable = 0.0;     // NaN when the full solve diverged
  double reduced_equilibrium = 0.0; // NaN when the reduced solve diverged
  double rel_error = 0.0;           // NaN sentinel: excluded from integrals
  bool full_converged = false;
  bool reduced_converged = false;
  std::string flags;  // semicolon-joined: divergent_full, divergent_reduced,
                      // denominator_degenerate
};

// |full - reduced| / |full|. Both magnitudes below 1e-12: 0 (shared trivial
// equilibrium). Only the denominator below 1e-12: NaN sentinel (the caller
// flags the row and the integral skips it).
double relative_error(double full_observable, double reduced_equilibrium);

struct IntegratedError {
  double raw = 0.0;         // trapezoid of rel_error over the included kappa axis
  double normalized = 0.0;  // raw / covered
  double covered = 0.0;     // total kappa length of included adjacent pairs
  int excluded = 0;         // rows skipped (non-finite rel_error)
};

// Trapezoidal integral over one (model, kernel, reduction, ic) slice, sorted
// by kappa. Rows with non-finite rel_error are skipped; segments touching a
// skipped row do not count toward `covered`. Fewer than two finite rows is
// an error.
IntegratedError integrated_error(const std::vector<SweepRecord>& slice);

// Everything computed once per kernel and shared by the sweep.
struct KernelContext {
  Kernel kernel;
  Grid grid;
  Eigen::VectorXd s;  // weighted degree at grid nodes
  double beta = 0.0;
  Eigen::MatrixXd matrix;  // kernel values at grid nodes
  std::optional<KernelApply> apply;
  EigenpairResult eig;
};

// Heap-allocated so the apply's grid pointer stays valid.
std::unique_ptr<KernelContext> make_kernel_context(const Kernel& kernel, int M);

struct TrajectoryDump {
  std::string model, kernel, reduction, ic;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

struct ReductionSummary {
  std::string kernel;
  double beta_eff = 0.0;
  double alpha = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::string eigenfunction_csv_path;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<ReductionSummary> reduction_summaries;
  // kernel name -> (node coordinate, eigenfunction value) pairs for CSV
  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> eigenfunctions;
  std::vector<TrajectoryDump> trajectories;  // only with dump_trajectory
};

SweepResult run_sweep(const ExperimentConfig& cfg);

// The uniform kappa grid used by the sweep for one model/reduction pair:
// kappa_points over [0, kappa_max], except GLV, which takes
// (kappa_points+1)/2 points over [0, d_max * coupling_constant] (the range
// where equilibria stay finite for the paper's parameters).
std::vector<double> kappa_grid_for(const ExperimentConfig& cfg, const Model& model,
                                   double coupling_constant);

struct ConvergenceRow {
  int N = 0;
  double wn_distance = 0.0;       // ||W_N - W||_L2
  double beta_N = 0.0;
  double beta_error = 0.0;        // |beta_N - grid beta_eff|
  double field_error = 0.0;       // max over snapshots of the L2 field distance
  double observable_error = 0.0;  // |L_N(x_N(T)) - L(x(T))|
  double envelope = 0.0;          // (err(0) + C1*||W_N-W||*T) * exp(3*L*T)
};

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg);

// Step-graphon field value at y: the owning cell's entry, or the midpoint of
// the two adjacent entries when y falls exactly on an interior cell edge.
double step_field_value(const Eigen::VectorXd& xN, double y);

struct EmitManifest {
  std::vector<std::string> files;  // paths relative to the output directory
};

EmitManifest emit_sweep_outputs(const ExperimentConfig& cfg, const SweepResult& result);
EmitManifest emit_convergence_outputs(const ExperimentConfig& cfg,
                                      const std::vector<ConvergenceRow>& rows);

}  // namespace graphon
