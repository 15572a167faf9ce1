#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynten/cp.hpp"
#include "dynten/metrics.hpp"
#include "dynten/parafac2.hpp"
#include "dynten/simgen.hpp"

namespace dynten {

enum class Method { Cp, Parafac2 };

std::string to_string(Method m);
std::string to_string(BSetup b);
std::string to_string(CSetup c);

/// One grid cell of the simulation experiment.
struct GridCell {
  double noise;
  CSetup c_setup;
  BSetup b_setup;
};

struct ExperimentConfig {
  SimConfig base;  ///< dims, rank and generator parameters; per-cell fields overwritten
  std::vector<double> noise_levels = {0.0, 0.33};
  std::vector<CSetup> c_setups = {CSetup::Random, CSetup::Trends};
  std::vector<BSetup> b_setups = {BSetup::Network, BSetup::Random};
  int n_datasets = 20;
  std::vector<Method> methods = {Method::Cp, Method::Parafac2};
  FitOptions fit;          ///< shared ALS options (seed field unused; derived per run)
  bool nonneg_c = true;    ///< PARAFAC2 time-mode non-negativity
  std::uint64_t master_seed = 20200420;
  int workers = 0;  ///< 0 = hardware concurrency
  std::string out_dir;

  std::vector<GridCell> cells() const;
};

/// One (cell, dataset, method) outcome. Failed runs carry the error text
/// instead of metrics.
struct RunRecord {
  GridCell cell{};
  int dataset = 0;
  Method method = Method::Cp;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  double fit = 0.0;
  double fms_a = 0.0, fms_b = 0.0, fms_c = 0.0;
  double clustering = 0.0;
  bool unique = false;
  bool converged = false;
  int iterations = 0;
  double wall_seconds = 0.0;
};

/// Mean metrics of one (cell, method) pair across its datasets.
struct CellSummary {
  GridCell cell{};
  Method method = Method::Cp;
  double mean_fit = 0.0;
  double mean_clustering = 0.0;
  double mean_fms_a = 0.0, mean_fms_b = 0.0, mean_fms_c = 0.0;
  int n_datasets = 0;
  int n_failed = 0;
};

struct ResultsTable {
  std::vector<CellSummary> rows;
  std::vector<RunRecord> runs;
};

/// Runs the full simulation grid. Deterministic given the master seed;
/// per-run seeds are derived by fixed splitting, so results do not depend
/// on the worker count. Individual fit failures are recorded, not fatal.
ResultsTable run_experiment(const ExperimentConfig& cfg);

/// Strict config parsing: unknown or invalid keys raise format_error
/// naming the key; absent keys fall back to the defaults above.
ExperimentConfig parse_config(const std::string& path);

/// Table-1-style CSV (one row per cell, method columns side by side) and
/// per-run JSON records.
void write_results_csv(const ResultsTable& table, const std::string& path);
void write_results_json(const ResultsTable& table, const std::string& path);
std::string format_results_table(const ResultsTable& table);

/// Fits one TNS3 tensor file and writes factor CSVs plus report.json into
/// out_dir. Returns the report.
FitReport fit_command(const std::string& tensor_path, Method method, const FitOptions& opts,
                      bool nonneg_c, const std::string& out_dir);

/// Flat per-run metrics record (the `unique` field is absent unless the
/// evaluation had access to multiple starts).
struct MetricsRecord {
  double fit = 0.0;
  double fms_a = 0.0, fms_b = 0.0, fms_c = 0.0;
  double clustering = 0.0;
  std::optional<bool> unique;
};

/// Evaluates a fitted model directory against a simulated-truth directory.
MetricsRecord evaluate_command(const std::string& tensor_path, const std::string& truth_dir,
                               const std::string& model_dir, Method method);
void write_metrics_json(const MetricsRecord& rec, const std::string& path);

/// Writes a simulated dataset (tensor, clean tensor, truth factors,
/// labels, config echo) into out_dir.
void simulate_command(const SimConfig& cfg, const std::string& out_dir);

}  // namespace dynten
