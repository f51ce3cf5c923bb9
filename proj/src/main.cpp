// graphon-reduce: equilibrium sweeps, discretization convergence studies,
// and kernel spectra for graphon-coupled dynamical systems.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphon/experiments.hpp"

namespace {

struct Overrides {
  int grid_M = -1;
  double dt = -1.0, t_max = -1.0, eq_tol = -1.0;
  std::string out;
  bool dump_trajectory = false;
};

void add_override_flags(CLI::App* cmd, Overrides* ov) {
  cmd->add_option("--grid-M", ov->grid_M, "quadrature intervals (overrides config)");
  cmd->add_option("--dt", ov->dt, "integrator step (overrides config)");
  cmd->add_option("--t-max", ov->t_max, "integration horizon (overrides config)");
  cmd->add_option("--eq-tol", ov->eq_tol, "equilibrium residual tolerance (overrides config)");
  cmd->add_option("--out", ov->out, "output directory (overrides config)");
}

graphon::ExperimentConfig load_config(const std::string& path, const Overrides& ov) {
  graphon::ExperimentConfig cfg = graphon::ExperimentConfig::from_file(path);
  if (ov.grid_M > 0) cfg.grid_M = ov.grid_M;
  if (ov.dt > 0) cfg.integrator.dt = ov.dt;
  if (ov.t_max > 0) cfg.integrator.t_max = ov.t_max;
  if (ov.eq_tol > 0) cfg.integrator.eq_tol = ov.eq_tol;
  if (!ov.out.empty()) cfg.out_dir = ov.out;
  if (ov.dump_trajectory) cfg.dump_trajectory = true;
  cfg.integrator.validate();
  return cfg;
}

nlohmann::json parse_param_list(const std::vector<std::string>& kvs) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    char* end = nullptr;
    const double num = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0')
      throw std::runtime_error("--param " + key + ": '" + val + "' is not a number");
    params[key] = num;
  }
  return params;
}

int run_sweep_cmd(const std::string& config_path, const Overrides& ov) {
  const graphon::ExperimentConfig cfg = load_config(config_path, ov);
  const graphon::SweepResult result = graphon::run_sweep(cfg);
  const graphon::EmitManifest manifest = graphon::emit_sweep_outputs(cfg, result);
  std::printf("sweep: %zu records, %zu files -> %s\n", result.records.size(),
              manifest.files.size(), cfg.out_dir.c_str());
  for (const auto& rs : result.reduction_summaries)
    std::printf("  %-12s beta_eff = %.12g  alpha = %.12g  (residual %.3g, %d iterations)\n",
                rs.kernel.c_str(), rs.beta_eff, rs.alpha, rs.residual, rs.iterations);
  return 0;
}

int run_converge_cmd(const std::string& config_path, const Overrides& ov) {
  const graphon::ExperimentConfig cfg = load_config(config_path, ov);
  const std::vector<graphon::ConvergenceRow> rows = graphon::convergence_study(cfg);
  const graphon::EmitManifest manifest = graphon::emit_convergence_outputs(cfg, rows);
  std::printf("%6s %13s %13s %13s %13s\n", "N", "||W_N - W||", "field", "observable",
              "|beta_N - beta|");
  for (const auto& r : rows)
    std::printf("%6d %13.6g %13.6g %13.6g %13.6g\n", r.N, r.wn_distance, r.field_error,
                r.observable_error, r.beta_error);
  std::printf("converge: %zu files -> %s\n", manifest.files.size(), cfg.out_dir.c_str());
  return 0;
}

int run_eig_cmd(const std::string& kernel_name, const std::vector<std::string>& kvs,
                int grid_M, const std::string& out_path) {
  const graphon::Kernel kernel = graphon::make_kernel(kernel_name, parse_param_list(kvs));
  const graphon::Grid grid = graphon::make_grid_for_kernel(kernel, grid_M);
  const Eigen::MatrixXd K = graphon::kernel_matrix(kernel, grid);
  const graphon::EigenpairResult eig = graphon::leading_eigenpair(K, grid);
  const double beta = graphon::beta_eff(kernel, grid);

  nlohmann::ordered_json j;
  j["kernel"] = kernel_name;
  j["alpha"] = eig.alpha;
  j["beta_eff"] = beta;
  j["iterations"] = eig.iterations;
  j["residual"] = eig.residual;
  std::printf("%s\n", j.dump(2).c_str());

  if (!out_path.empty()) {
    std::string csv = "y,a\n";
    char buf[96];
    for (int i = 0; i < grid.point_count(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.nodes[i], eig.a[i]);
      csv += buf;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
    f << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphon dynamical systems: kernels, dimension reductions, sweeps"};
  app.require_subcommand(1);

  std::string sweep_config, converge_config;
  Overrides sweep_ov, converge_ov;

  CLI::App* sweep = app.add_subcommand("sweep", "run the full-vs-reduced equilibrium sweep");
  sweep->add_option("--config", sweep_config, "TOML or JSON config file")->required();
  add_override_flags(sweep, &sweep_ov);
  sweep->add_flag("--dump-trajectory", sweep_ov.dump_trajectory,
                  "also write full trajectories at the largest kappa");

  CLI::App* converge = app.add_subcommand("converge", "finite-network discretization study");
  converge->add_option("--config", converge_config, "TOML or JSON config file")->required();
  add_override_flags(converge, &converge_ov);

  std::string eig_kernel, eig_out;
  std::vector<std::string> eig_params;
  int eig_M = 200;
  CLI::App* eig = app.add_subcommand("eig", "leading kernel eigenpair and beta_eff");
  eig->add_option("--kernel", eig_kernel, "kernel name")->required();
  eig->add_option("--param", eig_params, "kernel parameter override, key=value (repeatable)");
  eig->add_option("--grid-M", eig_M, "quadrature intervals");
  eig->add_option("--out", eig_out, "write the eigenfunction as CSV to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_config, sweep_ov);
    if (converge->parsed()) return run_converge_cmd(converge_config, converge_ov);
    if (eig->parsed()) return run_eig_cmd(eig_kernel, eig_params, eig_M, eig_out);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}
