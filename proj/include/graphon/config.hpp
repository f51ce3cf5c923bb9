// Experiment configuration: TOML or JSON files sharing one schema, strict
// about unknown keys, plus the factories that turn validated names and
// parameter tables into Kernel and Model instances.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphon/kernels.hpp"
#include "graphon/models.hpp"
#include "graphon/numerics.hpp"

namespace graphon {

struct ConvergenceSpec {
  std::string model = "sis";
  std::string kernel = "ring";
  double D = 2.0;
  double T = 5.0;
  double snapshot_dt = 0.5;
  std::vector<int> N = {8, 16, 32, 64, 128};
  int fine_M = 768;           // reference grid intervals; multiple of every N
  int subcell_points = 8;     // per-axis Simpson intervals for W_N cells
  int distance_points = 768;  // per-axis intervals for ||W_N - W||_L2
};

struct ExperimentConfig {
  std::vector<std::string> models;   // resolved (never contains "all")
  std::vector<std::string> kernels;  // resolved
  GeneCoupling gene_coupling = GeneCoupling::HillNeighbor;
  nlohmann::json model_params;   // per-model overrides keyed by model name
  nlohmann::json kernel_params;  // per-kernel overrides keyed by kernel name

  int grid_M = 200;
  IntegratorConfig integrator;

  int kappa_points = 201;
  double kappa_max = 20.0;

  std::vector<std::string> reductions = {"gbb", "spectral"};
  std::string out_dir = "out";
  long seed = 0;  // recorded for reproducibility; the pipeline is deterministic
  bool dump_trajectory = false;

  ConvergenceSpec convergence;

  ExperimentConfig();

  // Parses TOML (default) or JSON (".json" extension, or content starting
  // with '{'). Unknown keys anywhere are a hard error naming the key path.
  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_json(const nlohmann::json& doc);

  // Fully-resolved configuration, echoed into summary.json.
  nlohmann::ordered_json echo() const;
};

// Subset TOML reader covering this project's config files: [a.b] tables,
// bare/dotted keys, strings with the usual escapes, integers, floats,
// booleans, flat arrays, and # comments. No inline tables, arrays of tables,
// multiline strings, or dates; those raise errors rather than misparse.
nlohmann::json parse_mini_toml(const std::string& text);

// Kernel/model factories from validated names plus parameter tables (which
// may be null). Unknown parameter keys are hard errors.
Kernel make_kernel(const std::string& name, const nlohmann::json& params);
Model make_model(const std::string& name, const nlohmann::json& params,
                 GeneCoupling coupling);

const std::vector<std::string>& all_model_names();
const std::vector<std::string>& all_kernel_names();

}  // namespace graphon
