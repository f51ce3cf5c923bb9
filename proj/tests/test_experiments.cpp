#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "graphon/experiments.hpp"

using namespace graphon;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SweepRecord rec_at(double kappa, double rel) {
  SweepRecord r;
  r.kappa = kappa;
  r.rel_error = rel;
  return r;
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path p = fs::temp_directory_path() / leaf;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("relative error: plain ratio, shared-zero, and degenerate denominators") {
  CHECK(relative_error(2.0, 1.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(relative_error(-2.0, -1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(relative_error(1e-13, 5e-13) == 0.0);  // both at the zero equilibrium
  CHECK(std::isnan(relative_error(1e-13, 0.3)));
  CHECK(std::isnan(relative_error(std::nan(""), 0.3)));
  CHECK(std::isnan(relative_error(0.5, std::numeric_limits<double>::infinity())));
}

TEST_CASE("integrated error: trapezoid, coverage, and exclusions") {
  std::vector<SweepRecord> slice;
  for (int i = 0; i <= 200; ++i) slice.push_back(rec_at(20.0 * i / 200.0, 0.1));
  IntegratedError ie = integrated_error(slice);
  CHECK(ie.raw == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ie.normalized == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(ie.covered == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(ie.excluded == 0);

  // a NaN row removes both adjacent trapezoids from the covered mass
  slice[100].rel_error = std::nan("");
  ie = integrated_error(slice);
  CHECK(ie.excluded == 1);
  CHECK(ie.covered == doctest::Approx(20.0 - 0.2).epsilon(1e-12));
  CHECK(ie.normalized == doctest::Approx(0.1).epsilon(1e-12));

  CHECK_THROWS_AS(integrated_error({rec_at(0.0, 0.1)}), std::invalid_argument);
  std::vector<SweepRecord> sparse = {rec_at(0.0, 0.1), rec_at(1.0, std::nan("")),
                                     rec_at(2.0, 0.1)};
  // two usable rows but no adjacent pair
  CHECK_THROWS_AS(integrated_error(sparse), std::invalid_argument);
  std::vector<SweepRecord> unsorted = {rec_at(1.0, 0.1), rec_at(0.5, 0.1)};
  CHECK_THROWS_AS(integrated_error(unsorted), std::invalid_argument);
}

TEST_CASE("kappa grids: shared axis for most models, growth-limited for GLV") {
  ExperimentConfig cfg;
  const Model sis = Model::by_name("sis");
  const auto ks = kappa_grid_for(cfg, sis, 0.1);
  REQUIRE(ks.size() == 201);
  CHECK(ks.front() == 0.0);
  CHECK(ks.back() == 20.0);
  CHECK(ks[1] == doctest::Approx(0.1).epsilon(1e-15));

  const Model glv = Model::by_name("glv");
  const auto kg = kappa_grid_for(cfg, glv, 0.1);
  REQUIRE(kg.size() == 101);
  CHECK(kg.front() == 0.0);
  CHECK(kg.back() == doctest::Approx(0.2).epsilon(1e-15));  // d_max * beta
}

TEST_CASE("mini TOML: tables, dotted keys, arrays, strings, comments") {
  const json doc = parse_mini_toml(
      "# top comment\n"
      "seed = 7\n"
      "[model]\n"
      "names = [\"sis\", \"glv\"]  # trailing comment\n"
      "gene_coupling = \"as_printed\"\n"
      "[kernel.params.er]\n"
      "p = 0.25\n"
      "[integrator]\n"
      "dt = 1e-2\n"
      "t_max = 50.0\n"
      "[output]\n"
      "dump_trajectory = true\n"
      "dir = \"a \\\"b\\\" c\\n\"\n");
  CHECK(doc.at("seed") == 7);
  CHECK(doc.at("seed").is_number_integer());
  CHECK(doc.at("model").at("names") == json({"sis", "glv"}));
  CHECK(doc.at("kernel").at("params").at("er").at("p") == 0.25);
  CHECK(doc.at("integrator").at("dt") == 0.01);
  CHECK(doc.at("integrator").at("t_max").is_number_float());
  CHECK(doc.at("output").at("dump_trajectory") == true);
  CHECK(doc.at("output").at("dir") == "a \"b\" c\n");
}

TEST_CASE("mini TOML rejects what it does not support, loudly") {
  CHECK_THROWS_AS(parse_mini_toml("[[table]]\nx = 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_mini_toml("x = { a = 1 }\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_mini_toml("x = \"\"\"m\"\"\"\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_mini_toml("x = 1\nx = 2\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_mini_toml("x = [1, [2]]\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_mini_toml("x 1\n"), std::runtime_error);
}

TEST_CASE("unknown config keys are rejected with their dotted path") {
  json doc;
  doc["kappa"]["maxx"] = 20.0;
  try {
    ExperimentConfig::from_json(doc);
    FAIL("expected a config error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("kappa.maxx") != std::string::npos);
  }
}

TEST_CASE("config name lists: explicit, 'all', duplicates, unknowns") {
  json doc;
  doc["model"]["names"] = "all";
  ExperimentConfig cfg = ExperimentConfig::from_json(doc);
  CHECK(cfg.models.size() == 6);
  CHECK(cfg.kernels.size() == 6);  // kernels default to all

  doc["model"]["names"] = json::array({"sis", "sis"});
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::runtime_error);
  doc["model"]["names"] = json::array({"sir"});
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::runtime_error);

  doc["model"]["names"] = "sis";  // single string promotes to a one-element list
  doc["model"]["gene_coupling"] = "as_printed";
  cfg = ExperimentConfig::from_json(doc);
  REQUIRE(cfg.models.size() == 1);
  CHECK(cfg.gene_coupling == GeneCoupling::AsPrinted);
}

TEST_CASE("config validation bounds") {
  json doc;
  doc["grid"]["M"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::runtime_error);
  doc = json();
  doc["kappa"]["points"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::runtime_error);
  doc = json();
  doc["sweep"]["reductions"] = json::array({"gbb", "nonsense"});
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::runtime_error);
  doc = json();
  doc["convergence"]["N"] = json::array({8, 8});
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::runtime_error);
}

TEST_CASE("config files: TOML by default, JSON by extension or brace") {
  const fs::path dir = fresh_dir("graphon_cfg_test");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "a.toml");
    f << "[grid]\nM = 44\n";
  }
  CHECK(ExperimentConfig::from_file((dir / "a.toml").string()).grid_M == 44);
  {
    std::ofstream f(dir / "b.json");
    f << "{\"grid\": {\"M\": 46}}";
  }
  CHECK(ExperimentConfig::from_file((dir / "b.json").string()).grid_M == 46);
  {
    std::ofstream f(dir / "c.conf");  // JSON content sniffed from the brace
    f << "{\"grid\": {\"M\": 48}}";
  }
  CHECK(ExperimentConfig::from_file((dir / "c.conf").string()).grid_M == 48);
  CHECK_THROWS_AS(ExperimentConfig::from_file((dir / "missing.toml").string()),
                  std::runtime_error);
}

TEST_CASE("factories apply parameter tables and reject unknown keys") {
  CHECK(make_kernel("er", {{"p", 0.3}}).p == 0.3);
  CHECK(make_kernel("ring", {{"q", 0.25}}).q == 0.25);
  CHECK_THROWS_AS(make_kernel("er", {{"q", 0.3}}), std::runtime_error);
  const Model glv = make_model("glv", {{"growth", 0.25}}, GeneCoupling::HillNeighbor);
  CHECK(glv.growth == 0.25);
  CHECK(glv.d_max() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(make_model("glv", {{"mu", 1.0}}, GeneCoupling::HillNeighbor),
                  std::runtime_error);
  // double-well roots must stay ordered
  CHECK_THROWS_AS(make_model("double_well", {{"r2", 7.0}}, GeneCoupling::HillNeighbor),
                  std::runtime_error);
}

TEST_CASE("kernel context assembles grid, degree, spectrum, and fast apply") {
  const auto ctx = make_kernel_context(make_kernel("er", {}), 40);
  CHECK(ctx->beta == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(ctx->eig.alpha == doctest::Approx(0.1).epsilon(1e-12));
  REQUIRE(ctx->apply.has_value());
  CHECK(ctx->apply->available());
  CHECK(ctx->matrix.rows() == ctx->grid.point_count());
}

TEST_CASE("tiny sweep end to end: records, determinism, panel emission") {
  json doc;
  doc["model"]["names"] = "sis";
  doc["kernel"]["names"] = "er";
  doc["grid"]["M"] = 20;
  doc["integrator"]["t_max"] = 150.0;
  doc["kappa"]["points"] = 5;
  doc["kappa"]["max"] = 2.0;
  ExperimentConfig cfg = ExperimentConfig::from_json(doc);

  const SweepResult result = run_sweep(cfg);
  REQUIRE(result.records.size() == 10);  // 5 kappa x 2 reductions
  REQUIRE(result.reduction_summaries.size() == 1);
  CHECK(result.reduction_summaries[0].kernel == "er");
  CHECK(result.records[0].kappa == 0.0);
  CHECK(result.records[0].D == 0.0);
  for (const auto& r : result.records) {
    CHECK(r.model == "sis");
    if (r.full_converged && r.reduced_converged)
      CHECK(r.rel_error <= 1e-10);  // constant kernel: the reduction is exact
    if (r.kappa == 1.0) {           // critical point: algebraically slow
      CHECK(!r.reduced_converged);
      CHECK(r.flags.empty());
    }
  }

  const fs::path out_a = fresh_dir("graphon_sweep_a");
  const fs::path out_b = fresh_dir("graphon_sweep_b");
  cfg.out_dir = out_a.string();
  emit_sweep_outputs(cfg, result);
  cfg.out_dir = out_b.string();
  const SweepResult again = run_sweep(cfg);
  const EmitManifest man_b = emit_sweep_outputs(cfg, again);

  const std::string csv_a = slurp(out_a / "sweep.csv");
  const std::string csv_b = slurp(out_b / "sweep.csv");
  CHECK(csv_a == csv_b);  // bit-identical reruns
  CHECK(csv_a.substr(0, 5) == "model");

  int panels = 0;
  for (const auto& f : man_b.files)
    if (f.rfind("panels/", 0) == 0) ++panels;
  CHECK(panels == 2);  // one per reduction
  CHECK(fs::exists(fs::path(cfg.out_dir) / "eigenfunction_er.csv"));
  CHECK(fs::exists(fs::path(cfg.out_dir) / "summary.json"));
}

TEST_CASE("empty record sets emit a headers-only CSV and no panels") {
  ExperimentConfig cfg;
  cfg.out_dir = fresh_dir("graphon_sweep_empty").string();
  const EmitManifest man = emit_sweep_outputs(cfg, SweepResult{});
  const std::string csv = slurp(fs::path(cfg.out_dir) / "sweep.csv");
  CHECK(csv ==
        "model,kernel,reduction,ic,D,kappa,full_observable,reduced_equilibrium,"
        "rel_error,full_converged,reduced_converged,flags\n");
  CHECK(!fs::exists(fs::path(cfg.out_dir) / "panels"));
  CHECK(man.files.size() == 2);  // csv + summary
}

TEST_CASE("trajectory dumps carry the full field at the last kappa") {
  json doc;
  doc["model"]["names"] = "sis";
  doc["kernel"]["names"] = "er";
  doc["grid"]["M"] = 8;
  doc["integrator"]["t_max"] = 3.0;
  doc["kappa"]["points"] = 2;
  doc["kappa"]["max"] = 2.0;
  doc["sweep"]["reductions"] = json::array({"gbb"});
  doc["output"]["dump_trajectory"] = true;
  ExperimentConfig cfg = ExperimentConfig::from_json(doc);
  cfg.out_dir = fresh_dir("graphon_sweep_traj").string();
  const SweepResult result = run_sweep(cfg);
  REQUIRE(result.trajectories.size() == 1);
  CHECK(result.trajectories[0].times.size() == 4);  // t = 0,1,2,3
  const EmitManifest man = emit_sweep_outputs(cfg, result);
  bool listed = false;
  for (const auto& f : man.files)
    if (f.find("trajectories/") != std::string::npos) listed = true;
  CHECK(listed);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "trajectories" / "sis_er_gbb_default.csv"));
}

TEST_CASE("step field evaluation: cells, edges, and the midpoint convention") {
  Eigen::VectorXd xN(4);
  xN << 1.0, 2.0, 3.0, 4.0;
  CHECK(step_field_value(xN, 0.1) == 1.0);
  CHECK(step_field_value(xN, 0.0) == 1.0);
  CHECK(step_field_value(xN, 1.0) == 4.0);
  CHECK(step_field_value(xN, 0.999) == 4.0);
  CHECK(step_field_value(xN, 0.25) == 1.5);            // exact cell edge
  CHECK(step_field_value(xN, 0.5 + 1e-14) == 2.5);     // within the snap window
  CHECK_THROWS_AS(step_field_value(xN, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(step_field_value(xN, 1.1), std::invalid_argument);
}

TEST_CASE("convergence study: aligned block partitions sit at the error floor") {
  json doc;
  doc["integrator"]["t_max"] = 500.0;
  doc["convergence"]["model"] = "sis";
  doc["convergence"]["kernel"] = "modular";
  doc["convergence"]["D"] = 0.5;
  doc["convergence"]["T"] = 1.0;
  doc["convergence"]["snapshot_dt"] = 0.5;
  doc["convergence"]["N"] = json::array({3, 6});
  doc["convergence"]["fine_M"] = 48;
  doc["convergence"]["subcell_points"] = 4;
  doc["convergence"]["distance_points"] = 48;
  const ExperimentConfig cfg = ExperimentConfig::from_json(doc);
  const auto rows = convergence_study(cfg);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CAPTURE(r.N);
    // the step graphon reproduces the kernel exactly on aligned partitions,
    // so the discretized dynamics match to solver precision
    CHECK(r.field_error <= 1e-9);
    CHECK(r.observable_error <= 1e-9);
    CHECK(r.beta_error <= 1e-10);
    CHECK(r.envelope >= r.field_error);
  }
}

TEST_CASE("convergence study: ER step graphons are exact at any N") {
  json doc;
  doc["convergence"]["model"] = "sis";
  doc["convergence"]["kernel"] = "er";
  doc["convergence"]["D"] = 2.0;
  doc["convergence"]["T"] = 1.0;
  doc["convergence"]["snapshot_dt"] = 0.5;
  doc["convergence"]["N"] = json::array({2, 5});
  doc["convergence"]["fine_M"] = 40;
  doc["convergence"]["subcell_points"] = 4;
  doc["convergence"]["distance_points"] = 40;
  const ExperimentConfig cfg = ExperimentConfig::from_json(doc);
  const auto rows = convergence_study(cfg);
  for (const auto& r : rows) {
    CHECK(r.wn_distance <= 1e-12);
    CHECK(r.field_error <= 1e-9);
  }
}

TEST_CASE("convergence study: ring ladder shrinks under refinement") {
  json doc;
  doc["convergence"]["model"] = "sis";
  doc["convergence"]["kernel"] = "ring";
  doc["convergence"]["D"] = 2.0;
  doc["convergence"]["T"] = 2.0;
  doc["convergence"]["snapshot_dt"] = 0.5;
  doc["convergence"]["N"] = json::array({4, 8, 16});
  doc["convergence"]["fine_M"] = 96;
  doc["convergence"]["subcell_points"] = 8;
  doc["convergence"]["distance_points"] = 96;
  const ExperimentConfig cfg = ExperimentConfig::from_json(doc);
  const auto rows = convergence_study(cfg);
  REQUIRE(rows.size() == 3);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].field_error < rows[i - 1].field_error);
    CHECK(rows[i].observable_error < rows[i - 1].observable_error);
    CHECK(rows[i].beta_error < rows[i - 1].beta_error);
    CHECK(rows[i].wn_distance < rows[i - 1].wn_distance);
  }
  ExperimentConfig bad = cfg;
  bad.convergence.snapshot_dt = 0.333;
  CHECK_THROWS_AS(convergence_study(bad), std::runtime_error);
}

TEST_CASE("convergence outputs: CSV and JSON pair") {
  std::vector<ConvergenceRow> rows(2);
  rows[0] = {8, 0.2, 0.67, 3e-3, 2e-3, 2e-3, 10.0};
  rows[1] = {16, 0.1, 0.668, 1.5e-3, 1e-3, 1e-3, 7.0};
  ExperimentConfig cfg;
  cfg.out_dir = fresh_dir("graphon_conv_emit").string();
  const EmitManifest man = emit_convergence_outputs(cfg, rows);
  REQUIRE(man.files.size() == 2);
  const std::string csv = slurp(fs::path(cfg.out_dir) / "convergence.csv");
  CHECK(csv.find("N,wn_distance,beta_N,beta_error,field_error,observable_error,envelope") == 0);
  CHECK(csv.find("\n8,") != std::string::npos);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "convergence.json"));
}
