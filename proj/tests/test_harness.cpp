#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dynten/harness.hpp"
#include "dynten/io.hpp"

using namespace dynten;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub = "") const {
    return sub.empty() ? path.string() : (path / sub).string();
  }
};

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.base.I = 12;
  cfg.base.J = 16;
  cfg.base.K = 6;
  cfg.base.rank = 4;
  cfg.base.cluster_sizes = {6, 6};
  cfg.base.network.base_width = 3;
  cfg.base.network.grow_per_window = 1;
  cfg.noise_levels = {0.0};
  cfg.c_setups = {CSetup::Random};
  cfg.b_setups = {BSetup::Random};
  cfg.n_datasets = 2;
  cfg.fit.rank = 4;
  cfg.fit.n_starts = 2;
  cfg.fit.max_iterations = 150;
  cfg.master_seed = 77;
  cfg.workers = 1;
  return cfg;
}

}  // namespace

TEST_CASE("parse_config defaults and validation") {
  TempDir dir("dynten_cfg");

  {
    std::ofstream f(dir.str("min.json"));
    f << "{}\n";
  }
  const ExperimentConfig cfg = parse_config(dir.str("min.json"));
  CHECK(cfg.base.I == 50);
  CHECK(cfg.base.J == 100);
  CHECK(cfg.base.K == 25);
  CHECK(cfg.n_datasets == 20);
  CHECK(cfg.fit.n_starts == 10);
  CHECK(cfg.fit.tolerance == 1e-8);
  CHECK(cfg.noise_levels == std::vector<double>{0.0, 0.33});
  CHECK(cfg.methods.size() == 2);

  {
    std::ofstream f(dir.str("negeta.json"));
    f << "{\"noise_levels\": [-0.1]}\n";
  }
  CHECK_THROWS_AS(parse_config(dir.str("negeta.json")), format_error);

  {
    std::ofstream f(dir.str("unknown.json"));
    f << "{\"foo\": 1}\n";
  }
  try {
    parse_config(dir.str("unknown.json"));
    CHECK(false);
  } catch (const format_error& e) {
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config(dir.str("missing.json")), format_error);

  {
    std::ofstream f(dir.str("notjson.json"));
    f << "not json\n";
  }
  CHECK_THROWS_AS(parse_config(dir.str("notjson.json")), format_error);
}

TEST_CASE("run_experiment determinism and shape") {
  ExperimentConfig cfg = tiny_config();

  const ResultsTable a = run_experiment(cfg);
  REQUIRE(a.rows.size() == 2);  // one cell x two methods
  REQUIRE(a.runs.size() == 4);  // 2 datasets x 2 methods
  for (const RunRecord& r : a.runs) CHECK_FALSE(r.failed);

  // identical master seed -> identical table, regardless of worker count
  ExperimentConfig cfg4 = cfg;
  cfg4.workers = 4;
  const ResultsTable b = run_experiment(cfg4);
  REQUIRE(b.rows.size() == a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].mean_fit == b.rows[i].mean_fit);
    CHECK(a.rows[i].mean_fms_b == b.rows[i].mean_fms_b);
    CHECK(a.rows[i].mean_clustering == b.rows[i].mean_clustering);
  }

  // PF2 beats CP on PARAFAC2-generated data in every tracked metric
  const CellSummary* cp = nullptr;
  const CellSummary* pf2 = nullptr;
  for (const CellSummary& row : a.rows)
    (row.method == Method::Cp ? cp : pf2) = &row;
  REQUIRE(cp);
  REQUIRE(pf2);
  CHECK(pf2->mean_fit >= cp->mean_fit);
  CHECK(pf2->mean_fms_b >= cp->mean_fms_b);

  // empty grid -> empty table
  ExperimentConfig empty = cfg;
  empty.noise_levels.clear();
  const ResultsTable e = run_experiment(empty);
  CHECK(e.rows.empty());
  CHECK(e.runs.empty());
}

TEST_CASE("results persistence round trip") {
  TempDir dir("dynten_results");
  const ResultsTable table = run_experiment(tiny_config());
  write_results_csv(table, dir.str("results.csv"));
  write_results_json(table, dir.str("runs.json"));
  CHECK(fs::exists(dir.str("results.csv")));
  CHECK(fs::exists(dir.str("runs.json")));
  std::ifstream csv(dir.str("results.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("fms_B_pf2") != std::string::npos);
  CHECK_FALSE(format_results_table(table).empty());
}

TEST_CASE("simulate, fit and evaluate commands") {
  TempDir dir("dynten_cmd");
  SimConfig sc;
  sc.I = 12;
  sc.J = 16;
  sc.K = 6;
  sc.rank = 4;
  sc.cluster_sizes = {6, 6};
  sc.noise = 0.1;
  sc.seed = 5;
  simulate_command(sc, dir.str("sim"));
  for (const char* name : {"tensor.tns3", "clean.tns3", "truth_A.csv", "truth_B.csv",
                           "truth_C.csv", "labels.csv", "config.json"})
    CHECK(fs::exists(dir.path / "sim" / name));

  FitOptions opts;
  opts.rank = 4;
  opts.n_starts = 2;
  opts.max_iterations = 200;
  opts.seed = 3;

  const FitReport pf2_rep = fit_command(dir.str("sim/tensor.tns3"), Method::Parafac2, opts,
                                        true, dir.str("pf2"));
  const FitReport cp_rep =
      fit_command(dir.str("sim/tensor.tns3"), Method::Cp, opts, false, dir.str("cp"));

  // paired-run ordering on PARAFAC2-generated data
  CHECK(cp_rep.fit <= pf2_rep.fit + 1e-9);

  // exported evolving factors satisfy the constraint
  const auto Bk = read_stacked_csv(dir.str("pf2/B.csv"));
  CHECK(pf2_constraint_gap(Bk) <= 1e-8);

  const MetricsRecord pf2_metrics = evaluate_command(
      dir.str("sim/tensor.tns3"), dir.str("sim"), dir.str("pf2"), Method::Parafac2);
  CHECK(pf2_metrics.fit == doctest::Approx(pf2_rep.fit).epsilon(1e-6));
  CHECK(pf2_metrics.fms_b > 0.8);
  CHECK_FALSE(pf2_metrics.unique.has_value());

  const MetricsRecord cp_metrics =
      evaluate_command(dir.str("sim/tensor.tns3"), dir.str("sim"), dir.str("cp"), Method::Cp);
  CHECK(cp_metrics.fms_b <= pf2_metrics.fms_b);

  write_metrics_json(pf2_metrics, dir.str("metrics.json"));
  CHECK(fs::exists(dir.str("metrics.json")));

  // error paths: missing file, malformed tensor with line number
  CHECK_THROWS_AS(fit_command(dir.str("nosuch.tns3"), Method::Cp, opts, false, dir.str("x")),
                  format_error);
  {
    std::ofstream f(dir.str("bad.tns3"));
    f << "TNS3 2 2 2\n1 2 3 4\n5 6 seven 8\n";
  }
  try {
    fit_command(dir.str("bad.tns3"), Method::Cp, opts, false, dir.str("x"));
    CHECK(false);
  } catch (const format_error& e) {
    CHECK(e.line() == 3);
  }
}
