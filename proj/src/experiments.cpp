#include "graphon/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "graphon/svg.hpp"

namespace graphon {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// ------------------------------------------------------------- errors ----

double relative_error(double full_observable, double reduced_equilibrium) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!std::isfinite(full_observable) || !std::isfinite(reduced_equilibrium)) return nan;
  const double af = std::abs(full_observable);
  if (af < 1e-12)
    return std::abs(reduced_equilibrium) < 1e-12 ? 0.0 : nan;
  return std::abs(full_observable - reduced_equilibrium) / af;
}

IntegratedError integrated_error(const std::vector<SweepRecord>& slice) {
  for (size_t i = 1; i < slice.size(); ++i)
    if (!(slice[i].kappa > slice[i - 1].kappa))
      throw std::invalid_argument("sweep slice must be sorted by kappa");
  IntegratedError out;
  int finite_rows = 0;
  for (const auto& r : slice) {
    if (std::isfinite(r.rel_error)) ++finite_rows;
    else ++out.excluded;
  }
  if (finite_rows < 2)
    throw std::invalid_argument("integrated error needs at least two usable rows");
  for (size_t i = 0; i + 1 < slice.size(); ++i) {
    const SweepRecord& a = slice[i];
    const SweepRecord& b = slice[i + 1];
    if (!std::isfinite(a.rel_error) || !std::isfinite(b.rel_error)) continue;
    const double dk = b.kappa - a.kappa;
    out.raw += 0.5 * (a.rel_error + b.rel_error) * dk;
    out.covered += dk;
  }
  if (!(out.covered > 0.0))
    throw std::invalid_argument("integrated error: no adjacent pair of usable rows");
  out.normalized = out.raw / out.covered;
  return out;
}

// ------------------------------------------------------ kernel context ----

std::unique_ptr<KernelContext> make_kernel_context(const Kernel& kernel, int M) {
  auto ctx = std::make_unique<KernelContext>();
  ctx->kernel = kernel;
  ctx->grid = make_grid_for_kernel(kernel, M);
  ctx->s = degree_field(kernel, ctx->grid);
  ctx->beta = beta_eff_from_degree(ctx->grid, ctx->s);
  ctx->matrix = kernel_matrix(kernel, ctx->grid);
  ctx->apply.emplace(kernel, ctx->grid);
  ctx->eig = leading_eigenpair(ctx->matrix, ctx->grid);
  return ctx;
}

// -------------------------------------------------------------- sweep ----

namespace {

uint64_t double_bits(double v) {
  uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

json params_for(const json& table, const std::string& name) {
  if (table.is_object() && table.contains(name)) return table.at(name);
  return json();
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (size_t i = 0; i < flags.size(); ++i) {
    if (i) out += ";";
    out += flags[i];
  }
  return out;
}

}  // namespace

std::vector<double> kappa_grid_for(const ExperimentConfig& cfg, const Model& model,
                                   double coupling_constant) {
  int n = cfg.kappa_points;
  double kmax = cfg.kappa_max;
  if (model.has_bounded_d_range()) {
    n = std::max(2, (cfg.kappa_points + 1) / 2);
    kmax = model.d_max() * coupling_constant;
  }
  std::vector<double> ks(n);
  for (int j = 0; j < n; ++j) ks[j] = kmax * j / (n - 1);
  return ks;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  SweepResult out;
  // Reduced solves depend only on (model, ic, kappa) and are reused across
  // kernels and reductions when kappa matches bitwise.
  std::map<std::tuple<std::string, std::string, uint64_t>, ReducedPoint> reduced_cache;

  for (const auto& kname : cfg.kernels) {
    Kernel kernel = make_kernel(kname, params_for(cfg.kernel_params, kname));
    auto ctx = make_kernel_context(kernel, cfg.grid_M);
    out.reduction_summaries.push_back({kname, ctx->beta, ctx->eig.alpha,
                                       ctx->eig.residual, ctx->eig.iterations,
                                       "eigenfunction_" + kname + ".csv"});
    {
      std::vector<std::pair<double, double>> ef;
      ef.reserve(ctx->grid.point_count());
      for (int i = 0; i < ctx->grid.point_count(); ++i)
        ef.emplace_back(ctx->grid.nodes[i], ctx->eig.a[i]);
      out.eigenfunctions.emplace_back(kname, std::move(ef));
    }

    for (const auto& mname : cfg.models) {
      Model model = make_model(mname, params_for(cfg.model_params, mname), cfg.gene_coupling);
      // Full solves are shared between reductions only when D matches
      // bitwise (kappa = 0, mostly); beta_eff and alpha differing by ulps
      // must not silently collapse two distinct D values into one solve.
      std::map<std::pair<std::string, uint64_t>, EquilibriumResult> full_cache;

      for (const auto& red : cfg.reductions) {
        const double coupling_const = red == "gbb" ? ctx->beta : ctx->eig.alpha;
        const std::vector<double> kappas = kappa_grid_for(cfg, model, coupling_const);

        for (const auto& [ic_label, ic_value] : model.initial_conditions()) {
          for (double kappa : kappas) {
            const double D = kappa == 0.0 ? 0.0 : kappa / coupling_const;

            const auto full_key = std::make_pair(ic_label, double_bits(D));
            auto fit = full_cache.find(full_key);
            if (fit == full_cache.end()) {
              EquilibriumResult r = solve_full(model, D, ctx->grid, &*ctx->apply,
                                               &ctx->matrix, ic_value, cfg.integrator);
              fit = full_cache.emplace(full_key, std::move(r)).first;
            }
            const EquilibriumResult& fr = fit->second;

            const auto red_key = std::make_tuple(mname, ic_label, double_bits(kappa));
            auto rit = reduced_cache.find(red_key);
            if (rit == reduced_cache.end()) {
              ReducedPoint p = solve_reduced(model, kappa, ic_value, cfg.integrator);
              rit = reduced_cache.emplace(red_key, std::move(p)).first;
            }
            const ReducedPoint& rp = rit->second;

            SweepRecord rec;
            rec.model = mname;
            rec.kernel = kname;
            rec.reduction = red;
            rec.ic = ic_label;
            rec.D = D;
            rec.kappa = kappa;
            std::vector<std::string> flags;
            if (fr.status == SolveStatus::Blowup) {
              rec.full_observable = std::numeric_limits<double>::quiet_NaN();
              flags.push_back("divergent_full");
            } else {
              rec.full_observable = red == "gbb"
                                        ? gbb_observable(ctx->grid, ctx->s, fr.state)
                                        : spectral_observable(ctx->grid, ctx->eig.a, fr.state);
              rec.full_converged = fr.converged;
            }
            if (rp.status == SolveStatus::Blowup) {
              rec.reduced_equilibrium = std::numeric_limits<double>::quiet_NaN();
              flags.push_back("divergent_reduced");
            } else {
              rec.reduced_equilibrium = rp.value;
              rec.reduced_converged = rp.converged;
            }
            rec.rel_error = relative_error(rec.full_observable, rec.reduced_equilibrium);
            if (!std::isfinite(rec.rel_error) && fr.status != SolveStatus::Blowup &&
                rp.status != SolveStatus::Blowup)
              flags.push_back("denominator_degenerate");
            rec.flags = join_flags(flags);
            out.records.push_back(std::move(rec));
          }

          if (cfg.dump_trajectory) {
            TrajectoryDump dump;
            dump.model = mname;
            dump.kernel = kname;
            dump.reduction = red;
            dump.ic = ic_label;
            FullSolveOptions opts;
            opts.snapshot_dt =
                cfg.integrator.dt * std::max<long>(1, std::lround(1.0 / cfg.integrator.dt));
            opts.snapshot = [&dump](double t, const Eigen::VectorXd& x) {
              dump.times.push_back(t);
              dump.states.push_back(x);
            };
            const double D_last =
                kappas.back() == 0.0 ? 0.0 : kappas.back() / coupling_const;
            solve_full(model, D_last, ctx->grid, &*ctx->apply, &ctx->matrix, ic_value,
                       cfg.integrator, opts);
            out.trajectories.push_back(std::move(dump));
          }
        }
      }
    }
  }
  return out;
}

// -------------------------------------------------------- convergence ----

double step_field_value(const Eigen::VectorXd& xN, double y) {
  const int N = static_cast<int>(xN.size());
  if (N < 1) throw std::invalid_argument("step field needs at least one cell");
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("coordinate must lie in [0,1]");
  const double scaled = y * N;
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) < 1e-12) {
    const int b = static_cast<int>(nearest);
    if (b >= 1 && b <= N - 1) return 0.5 * (xN[b - 1] + xN[b]);  // cell edge
    return b <= 0 ? xN[0] : xN[N - 1];
  }
  return xN[std::min(static_cast<int>(scaled), N - 1)];
}

namespace {

// Empirical bounds over [lo,hi]: max |f'|, max |G_x|, max |G_x'|, max |G|.
struct SampledBounds {
  double lf = 0.0, lgx = 0.0, lgxp = 0.0, gmax = 0.0;
};

SampledBounds sample_bounds(const Model& model, double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double h = std::max(1e-7, 1e-7 * (std::abs(lo) + std::abs(hi)));
  SampledBounds b;
  const int n = 41;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    b.lf = std::max(b.lf, std::abs(model.f(x + h) - model.f(x - h)) / (2 * h));
    for (int j = 0; j < n; ++j) {
      const double xp = lo + (hi - lo) * j / (n - 1);
      b.gmax = std::max(b.gmax, std::abs(model.G(x, xp)));
      b.lgx = std::max(b.lgx, std::abs(model.G(x + h, xp) - model.G(x - h, xp)) / (2 * h));
      b.lgxp = std::max(b.lgxp, std::abs(model.G(x, xp + h) - model.G(x, xp - h)) / (2 * h));
    }
  }
  return b;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg) {
  const ConvergenceSpec& spec = cfg.convergence;
  Kernel kernel = make_kernel(spec.kernel, params_for(cfg.kernel_params, spec.kernel));
  Model model = make_model(spec.model, params_for(cfg.model_params, spec.model),
                           cfg.gene_coupling);

  const double steps_per_snap = spec.snapshot_dt / cfg.integrator.dt;
  if (std::abs(steps_per_snap - std::lround(steps_per_snap)) > 1e-9)
    throw std::runtime_error("config: convergence.snapshot_dt must be a multiple of integrator.dt");
  const double snaps_to_T = spec.T / spec.snapshot_dt;
  if (std::abs(snaps_to_T - std::lround(snaps_to_T)) > 1e-9)
    throw std::runtime_error("config: convergence.T must be a multiple of convergence.snapshot_dt");

  Grid fine = make_grid_for_kernel(kernel, spec.fine_M);
  KernelApply apply(kernel, fine);
  Eigen::MatrixXd dense;
  const bool need_dense = !apply.available() || !model.separable();
  if (need_dense) dense = kernel_matrix(kernel, fine);

  IntegratorConfig integ = cfg.integrator;
  integ.t_max = spec.T;
  integ.eq_tol = 1e-300;  // run the full horizon; snapshots carry the data

  const double ic = model.initial_conditions().front().second;

  std::vector<Eigen::VectorXd> ref_states;
  FullSolveOptions ref_opts;
  ref_opts.snapshot_dt = spec.snapshot_dt;
  ref_opts.snapshot = [&](double, const Eigen::VectorXd& x) { ref_states.push_back(x); };
  EquilibriumResult ref = solve_full(model, spec.D, fine, &apply,
                                     need_dense ? &dense : nullptr, ic, integ, ref_opts);
  if (ref.status == SolveStatus::Blowup)
    throw std::runtime_error("convergence study: reference trajectory diverged");

  const Eigen::VectorXd s_fine = degree_field(kernel, fine);
  const double beta_fine = beta_eff_from_degree(fine, s_fine);

  std::vector<ConvergenceRow> rows;
  for (int N : spec.N) {
    ConvergenceRow row;
    row.N = N;

    const Eigen::MatrixXd WN = step_graphon_matrix(kernel, N, spec.subcell_points);
    int dist_points = std::max(spec.distance_points, 4 * N);
    if (dist_points % 2) ++dist_points;
    row.wn_distance = kernel_l2_distance(kernel, WN, dist_points);

    const Eigen::VectorXd s_N = WN.rowwise().mean();
    const double s_sum = s_N.sum();
    if (std::abs(s_sum) < 1e-14)
      throw std::runtime_error("convergence study: step graphon has zero degree");
    row.beta_N = s_N.squaredNorm() / s_sum;
    row.beta_error = std::abs(row.beta_N - beta_fine);

    std::vector<Eigen::VectorXd> net_states;
    FullSolveOptions opts;
    opts.snapshot_dt = spec.snapshot_dt;
    opts.snapshot = [&](double, const Eigen::VectorXd& x) { net_states.push_back(x); };
    EquilibriumResult net = solve_finite_network(model, spec.D, WN, ic, integ, opts);
    if (net.status == SolveStatus::Blowup)
      throw std::runtime_error("convergence study: N = " + std::to_string(N) +
                               " trajectory diverged");
    if (net_states.size() != ref_states.size())
      throw std::logic_error("convergence study: snapshot counts disagree");

    double err0 = 0.0;
    for (size_t i = 0; i < ref_states.size(); ++i) {
      double acc = 0.0;
      for (int j = 0; j < fine.point_count(); ++j) {
        const double d =
            step_field_value(net_states[i], fine.eval_nodes[j]) - ref_states[i][j];
        acc += fine.weights[j] * d * d;
      }
      const double e = std::sqrt(std::max(acc, 0.0));
      if (i == 0) err0 = e;
      row.field_error = std::max(row.field_error, e);
    }

    const Eigen::VectorXd& xN_final = net_states.back();
    const double LN = s_N.dot(xN_final) / s_sum;
    const double Lfull = gbb_observable(fine, s_fine, ref_states.back());
    row.observable_error = std::abs(LN - Lfull);

    const double lo = std::min(ref.min_value, net.min_value);
    const double hi = std::max(ref.max_value, net.max_value);
    const SampledBounds b = sample_bounds(model, lo, hi);
    const double wmax = std::max(WN.cwiseAbs().maxCoeff(), 1e-12);
    const double L = b.lf + spec.D * wmax * (b.lgx + b.lgxp);
    const double C1 = spec.D * b.gmax;
    row.envelope = (err0 + C1 * row.wn_distance * spec.T) * std::exp(3.0 * L * spec.T);

    rows.push_back(row);
  }
  (void)beta_fine;
  return rows;
}

// ------------------------------------------------------------ emission ----

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

struct SliceRef {
  std::string model, kernel, reduction, ic;
  size_t begin = 0, end = 0;  // [begin, end) into records
};

std::vector<SliceRef> slice_records(const std::vector<SweepRecord>& records) {
  std::vector<SliceRef> slices;
  for (size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    if (slices.empty() || slices.back().model != r.model ||
        slices.back().kernel != r.kernel || slices.back().reduction != r.reduction ||
        slices.back().ic != r.ic) {
      slices.push_back({r.model, r.kernel, r.reduction, r.ic, i, i + 1});
    } else {
      slices.back().end = i + 1;
    }
  }
  return slices;
}

}  // namespace

EmitManifest emit_sweep_outputs(const ExperimentConfig& cfg, const SweepResult& result) {
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  EmitManifest manifest;

  {
    std::string csv =
        "model,kernel,reduction,ic,D,kappa,full_observable,reduced_equilibrium,"
        "rel_error,full_converged,reduced_converged,flags\n";
    for (const auto& r : result.records) {
      csv += r.model + "," + r.kernel + "," + r.reduction + "," + r.ic + "," +
             fmt(r.D) + "," + fmt(r.kappa) + "," + fmt(r.full_observable) + "," +
             fmt(r.reduced_equilibrium) + "," + fmt(r.rel_error) + "," +
             (r.full_converged ? "1" : "0") + "," + (r.reduced_converged ? "1" : "0") +
             "," + r.flags + "\n";
    }
    write_file(dir / "sweep.csv", csv);
    manifest.files.push_back("sweep.csv");
  }

  for (const auto& [kname, points] : result.eigenfunctions) {
    std::string csv = "y,a\n";
    for (const auto& [y, a] : points) csv += fmt(y) + "," + fmt(a) + "\n";
    const std::string name = "eigenfunction_" + kname + ".csv";
    write_file(dir / name, csv);
    manifest.files.push_back(name);
  }

  const std::vector<SliceRef> slices = slice_records(result.records);

  {
    ordered_json j;
    j["kappa_grid"]["points"] = cfg.kappa_points;
    j["kappa_grid"]["max"] = cfg.kappa_max;
    j["kappa_grid"]["glv_points"] = std::max(2, (cfg.kappa_points + 1) / 2);
    j["kappa_grid"]["glv_max_rule"] = "d_max * coupling_constant";
    j["config"] = cfg.echo();
    j["reductions"] = ordered_json::array();
    for (const auto& rs : result.reduction_summaries) {
      ordered_json r;
      r["kernel"] = rs.kernel;
      r["beta_eff"] = rs.beta_eff;
      r["alpha"] = rs.alpha;
      r["residual"] = rs.residual;
      r["iterations"] = rs.iterations;
      r["eigenfunction_csv_path"] = rs.eigenfunction_csv_path;
      j["reductions"].push_back(std::move(r));
    }
    j["integrated_errors"] = ordered_json::array();
    int excluded_total = 0;
    for (const auto& s : slices) {
      ordered_json e;
      e["model"] = s.model;
      e["kernel"] = s.kernel;
      e["reduction"] = s.reduction;
      e["ic"] = s.ic;
      std::vector<SweepRecord> slice(result.records.begin() + s.begin,
                                     result.records.begin() + s.end);
      try {
        const IntegratedError ie = integrated_error(slice);
        e["raw"] = ie.raw;
        e["normalized"] = ie.normalized;
        e["covered_kappa"] = ie.covered;
        e["excluded_rows"] = ie.excluded;
        excluded_total += ie.excluded;
      } catch (const std::invalid_argument& ex) {
        e["error"] = ex.what();
        for (const auto& r : slice)
          if (!std::isfinite(r.rel_error)) ++excluded_total;
      }
      j["integrated_errors"].push_back(std::move(e));
    }
    j["excluded_rows_total"] = excluded_total;
    write_file(dir / "summary.json", j.dump(2) + "\n");
    manifest.files.push_back("summary.json");
  }

  if (!slices.empty()) fs::create_directories(dir / "panels");
  for (size_t i = 0; i < slices.size();) {
    // group ic slices of one (model, kernel, reduction) into one panel
    size_t jx = i;
    while (jx < slices.size() && slices[jx].model == slices[i].model &&
           slices[jx].kernel == slices[i].kernel &&
           slices[jx].reduction == slices[i].reduction)
      ++jx;
    SvgPlot plot(slices[i].model + " / " + slices[i].kernel + " / " + slices[i].reduction,
                 "effective coupling kappa", "equilibrium observable");
    for (size_t k = i; k < jx; ++k) {
      SvgSeries full;
      full.stroke = "#c23030";
      full.width = 3.4;
      full.opacity = 0.45;
      SvgSeries reduced;
      reduced.stroke = "#000000";
      reduced.width = 1.1;
      reduced.opacity = 1.0;
      for (size_t r = slices[k].begin; r < slices[k].end; ++r) {
        const SweepRecord& rec = result.records[r];
        full.x.push_back(rec.kappa);
        full.y.push_back(rec.full_observable);
        reduced.x.push_back(rec.kappa);
        reduced.y.push_back(rec.reduced_equilibrium);
      }
      plot.add_series(std::move(full));
      plot.add_series(std::move(reduced));
    }
    const std::string name = "panels/" + slices[i].model + "_" + slices[i].kernel +
                             "_" + slices[i].reduction + ".svg";
    write_file(dir / name, plot.render());
    manifest.files.push_back(name);
    i = jx;
  }

  if (!result.trajectories.empty()) fs::create_directories(dir / "trajectories");
  for (const auto& t : result.trajectories) {
    std::string csv = "t";
    const int n = t.states.empty() ? 0 : static_cast<int>(t.states.front().size());
    for (int k = 0; k < n; ++k) csv += ",node_" + std::to_string(k);
    csv += "\n";
    for (size_t i = 0; i < t.times.size(); ++i) {
      csv += fmt(t.times[i]);
      for (int k = 0; k < n; ++k) csv += "," + fmt(t.states[i][k]);
      csv += "\n";
    }
    const std::string name =
        "trajectories/" + t.model + "_" + t.kernel + "_" + t.reduction + "_" + t.ic + ".csv";
    write_file(dir / name, csv);
    manifest.files.push_back(name);
  }

  return manifest;
}

EmitManifest emit_convergence_outputs(const ExperimentConfig& cfg,
                                      const std::vector<ConvergenceRow>& rows) {
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  EmitManifest manifest;

  std::string csv = "N,wn_distance,beta_N,beta_error,field_error,observable_error,envelope\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.N) + "," + fmt(r.wn_distance) + "," + fmt(r.beta_N) + "," +
           fmt(r.beta_error) + "," + fmt(r.field_error) + "," + fmt(r.observable_error) +
           "," + fmt(r.envelope) + "\n";
  }
  write_file(dir / "convergence.csv", csv);
  manifest.files.push_back("convergence.csv");

  ordered_json j;
  j["config"] = cfg.echo();
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json e;
    e["N"] = r.N;
    e["wn_distance"] = r.wn_distance;
    e["beta_N"] = r.beta_N;
    e["beta_error"] = r.beta_error;
    e["field_error"] = r.field_error;
    e["observable_error"] = r.observable_error;
    e["envelope"] = r.envelope;
    j["rows"].push_back(std::move(e));
  }
  write_file(dir / "convergence.json", j.dump(2) + "\n");
  manifest.files.push_back("convergence.json");
  return manifest;
}

}  // namespace graphon
