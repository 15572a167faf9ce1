// dynten command line: simulate / fit / evaluate / falff / experiment.
//
// Exit codes: 0 success, 1 usage error, 2 data or format error,
// 3 numeric failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dynten/falff.hpp"
#include "dynten/harness.hpp"
#include "dynten/io.hpp"

namespace fs = std::filesystem;
using namespace dynten;

namespace {

Method method_from_string(const std::string& s) {
  if (s == "cp") return Method::Cp;
  if (s == "parafac2" || s == "pf2") return Method::Parafac2;
  throw CLI::ValidationError("--method", "expected cp or parafac2");
}

// Subject CSV: one row per series, comma-separated samples, no header.
Matrix read_subject_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* next = nullptr;
      const double v = std::strtod(cell.c_str(), &next);
      if (next == cell.c_str())
        throw format_error("invalid value `" + cell + "` in " + path, lineno);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw format_error("ragged row in " + path, lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw format_error("no data in " + path);
  Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j) M(i, j) = rows[static_cast<std::size_t>(i)][j];
  return M;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CP / PARAFAC2 factorization of time-evolving tensors"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "generate a simulated dataset");
  SimConfig sim_cfg;
  std::string sim_out = "simdata";
  std::string sim_b = "random", sim_c = "random";
  std::vector<long long> sim_dims;
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--seed", sim_cfg.seed, "RNG seed");
  sim->add_option("--rank", sim_cfg.rank, "number of components");
  sim->add_option("--dims", sim_dims, "tensor extents I J K")->expected(3);
  sim->add_option("--eta", sim_cfg.noise, "noise level");
  sim->add_option("--b-setup", sim_b, "evolving-mode setup: random|network");
  sim->add_option("--c-setup", sim_c, "time-mode setup: random|trends");

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "fit a model to a TNS3 tensor file");
  std::string fit_tensor, fit_method = "parafac2", fit_out = "model";
  FitOptions fit_opts;
  bool fit_nonneg = false;
  fit->add_option("tensor", fit_tensor, "input TNS3 file")->required();
  fit->add_option("--method", fit_method, "cp|parafac2");
  fit->add_option("--out", fit_out, "output directory");
  fit->add_option("--rank", fit_opts.rank, "number of components");
  fit->add_option("--starts", fit_opts.n_starts, "number of random starts");
  fit->add_option("--tol", fit_opts.tolerance, "relative loss-change tolerance");
  fit->add_option("--max-iters", fit_opts.max_iterations, "ALS sweep cap");
  fit->add_option("--seed", fit_opts.seed, "RNG seed");
  fit->add_flag("--nonneg-c", fit_nonneg, "non-negative time-mode factor (PARAFAC2)");

  // ---- evaluate ----
  auto* eval = app.add_subcommand("evaluate", "score a fitted model against simulated truth");
  std::string eval_tensor, eval_truth, eval_model, eval_method = "parafac2", eval_out;
  eval->add_option("--tensor", eval_tensor, "TNS3 tensor the model was fit to")->required();
  eval->add_option("--truth", eval_truth, "simulate output directory")->required();
  eval->add_option("--model", eval_model, "fit output directory")->required();
  eval->add_option("--method", eval_method, "cp|parafac2");
  eval->add_option("--out", eval_out, "metrics JSON path (default: stdout)");

  // ---- falff ----
  auto* fal = app.add_subcommand("falff", "sliding-window fALFF features to a TNS3 tensor");
  std::vector<std::string> fal_inputs;
  std::string fal_out = "falff.tns3";
  WindowSpec fal_spec;
  double fal_rate = 1.0;
  bool fal_preprocess = false;
  fal->add_option("inputs", fal_inputs, "one CSV per subject (rows = series)")->required();
  fal->add_option("--window", fal_spec.window, "window length (samples)")->required();
  fal->add_option("--stride", fal_spec.stride, "stride (samples)")->required();
  fal->add_option("--flo", fal_spec.f_lo, "band low edge (Hz)");
  fal->add_option("--fhi", fal_spec.f_hi, "band high edge (Hz)");
  fal->add_option("--rate", fal_rate, "sampling rate (Hz)")->required();
  fal->add_option("--out", fal_out, "output TNS3 path");
  fal->add_flag("--preprocess", fal_preprocess,
                "center and normalize second-mode fibers of the output");

  // ---- experiment ----
  auto* exp = app.add_subcommand("experiment", "run the simulation grid");
  std::string exp_config, exp_out;
  std::uint64_t exp_seed = 0;
  bool exp_seed_set = false, exp_workers_set = false, exp_starts_set = false;
  int exp_workers = 0, exp_starts = 0;
  exp->add_option("--config", exp_config, "experiment config JSON");
  exp->add_option("--seed", exp_seed, "master seed override")
      ->each([&](const std::string&) { exp_seed_set = true; });
  exp->add_option("--workers", exp_workers, "worker thread count override")
      ->each([&](const std::string&) { exp_workers_set = true; });
  exp->add_option("--starts", exp_starts, "random-start count override")
      ->each([&](const std::string&) { exp_starts_set = true; });
  exp->add_option("--out", exp_out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sim) {
      if (sim_dims.size() == 3) {
        sim_cfg.I = static_cast<Index>(sim_dims[0]);
        sim_cfg.J = static_cast<Index>(sim_dims[1]);
        sim_cfg.K = static_cast<Index>(sim_dims[2]);
        if (sim_cfg.cluster_sizes == std::vector<Index>{25, 25} && sim_cfg.I != 50)
          sim_cfg.cluster_sizes = {sim_cfg.I / 2, sim_cfg.I - sim_cfg.I / 2};
      }
      sim_cfg.b_setup = sim_b == "network" ? BSetup::Network : BSetup::Random;
      sim_cfg.c_setup = sim_c == "trends" ? CSetup::Trends : CSetup::Random;
      if (sim_b != "network" && sim_b != "random")
        throw CLI::ValidationError("--b-setup", "expected random or network");
      if (sim_c != "trends" && sim_c != "random")
        throw CLI::ValidationError("--c-setup", "expected random or trends");
      simulate_command(sim_cfg, sim_out);
      std::cout << "wrote simulated dataset to " << sim_out << "\n";
    } else if (*fit) {
      const FitReport rep =
          fit_command(fit_tensor, method_from_string(fit_method), fit_opts, fit_nonneg, fit_out);
      std::cout << "fit: " << rep.fit << "%  iterations: " << rep.iterations
                << (rep.converged ? "" : "  (iteration cap reached)") << "\n"
                << "model written to " << fit_out << "\n";
    } else if (*eval) {
      const MetricsRecord rec =
          evaluate_command(eval_tensor, eval_truth, eval_model, method_from_string(eval_method));
      if (eval_out.empty()) {
        std::cout << "fit: " << rec.fit << "\nfms_A: " << rec.fms_a << "\nfms_B: " << rec.fms_b
                  << "\nfms_C: " << rec.fms_c << "\nclustering_acc: " << rec.clustering << "\n";
      } else {
        write_metrics_json(rec, eval_out);
        std::cout << "metrics written to " << eval_out << "\n";
      }
    } else if (*fal) {
      std::vector<TimeSeriesSet> subjects;
      for (const std::string& p : fal_inputs)
        subjects.emplace_back(read_subject_csv(p), 1.0 / fal_rate);
      DenseTensor3 T = build_falff_tensor(subjects, fal_spec);
      if (fal_preprocess) T = preprocess_tensor(T);
      write_tns3(T, fal_out);
      std::cout << "wrote " << T.dim(0) << "x" << T.dim(1) << "x" << T.dim(2) << " tensor to "
                << fal_out << "\n";
    } else if (*exp) {
      ExperimentConfig cfg = exp_config.empty() ? ExperimentConfig{} : parse_config(exp_config);
      if (exp_seed_set) cfg.master_seed = exp_seed;
      if (exp_workers_set) cfg.workers = exp_workers;
      if (exp_starts_set) cfg.fit.n_starts = exp_starts;
      if (!exp_out.empty()) cfg.out_dir = exp_out;
      const ResultsTable table = run_experiment(cfg);
      std::cout << format_results_table(table);
      if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        write_results_csv(table, (fs::path(cfg.out_dir) / "results.csv").string());
        write_results_json(table, (fs::path(cfg.out_dir) / "runs.json").string());
        std::cout << "results written to " << cfg.out_dir << "\n";
      }
      for (const RunRecord& r : table.runs)
        if (r.failed)
          std::cerr << "warning: run failed (" << to_string(r.method) << ", dataset " << r.dataset
                    << "): " << r.error << "\n";
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const format_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
