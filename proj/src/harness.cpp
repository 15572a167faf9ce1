#include "dynten/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "dynten/io.hpp"
#include "dynten/numerics.hpp"

namespace dynten {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Method m) { return m == Method::Cp ? "cp" : "parafac2"; }
std::string to_string(BSetup b) { return b == BSetup::Random ? "random" : "network"; }
std::string to_string(CSetup c) { return c == CSetup::Random ? "random" : "trends"; }

std::vector<GridCell> ExperimentConfig::cells() const {
  std::vector<GridCell> out;
  for (double eta : noise_levels)
    for (CSetup c : c_setups)
      for (BSetup b : b_setups) out.push_back({eta, c, b});
  return out;
}

namespace {

Matrix stack_rows(const std::vector<Matrix>& mats) {
  Index rows = 0;
  for (const Matrix& m : mats) rows += m.rows();
  Matrix out(rows, mats.front().cols());
  Index at = 0;
  for (const Matrix& m : mats) {
    out.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return out;
}

Matrix repeat_rows(const Matrix& m, Index times) {
  Matrix out(m.rows() * times, m.cols());
  for (Index t = 0; t < times; ++t) out.middleRows(t * m.rows(), m.rows()) = m;
  return out;
}

struct EvaluatedFactors {
  Matrix A;
  Matrix B_concat;
  Matrix C;
};

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_datasets < 1) throw std::invalid_argument("run_experiment: n_datasets must be >= 1");
  const std::vector<GridCell> grid = cfg.cells();
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_tasks = grid.size() * static_cast<std::size_t>(cfg.n_datasets);

  ResultsTable table;
  table.runs.assign(n_tasks * n_methods, RunRecord{});
  if (grid.empty() || n_methods == 0) return table;

  const int n_clusters = static_cast<int>(cfg.base.cluster_sizes.size());

  const auto run_task = [&](std::size_t task) {
    const std::size_t ci = task / static_cast<std::size_t>(cfg.n_datasets);
    const int d = static_cast<int>(task % static_cast<std::size_t>(cfg.n_datasets));
    const GridCell& cell = grid[ci];

    SimConfig sc = cfg.base;
    sc.noise = cell.noise;
    sc.c_setup = cell.c_setup;
    sc.b_setup = cell.b_setup;
    sc.seed = derive_seed(derive_seed(cfg.master_seed, 1000 + ci), static_cast<std::uint64_t>(d));

    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      RunRecord& rec = table.runs[task * n_methods + mi];
      rec.cell = cell;
      rec.dataset = d;
      rec.method = cfg.methods[mi];
      rec.seed = derive_seed(sc.seed, 501 + mi);
      try {
        const SimDataset ds = gen_dataset(sc);
        FitOptions fo = cfg.fit;
        fo.seed = rec.seed;
        EvaluatedFactors est;
        std::vector<FittedRun> starts_for_uniqueness;
        FitReport rep;
        if (cfg.methods[mi] == Method::Cp) {
          std::vector<CpStartResult> starts;
          auto [model, report] = cp_als(ds.noisy, fo, &starts);
          rep = report;
          est = {model.A, repeat_rows(model.B, sc.K), model.C};
          for (const auto& s : starts)
            starts_for_uniqueness.push_back(
                {s.report.fit, {s.model.A, repeat_rows(s.model.B, sc.K), s.model.C}});
        } else {
          std::vector<Pf2StartResult> starts;
          auto [model, report] = pf2_als(ds.noisy, fo, cfg.nonneg_c, &starts);
          rep = report;
          est = {model.A, stack_rows(model.B()), model.C};
          for (const auto& s : starts)
            starts_for_uniqueness.push_back(
                {s.report.fit, {s.model.A, stack_rows(s.model.B()), s.model.C}});
        }
        rec.fit = rep.fit;
        rec.converged = rep.converged;
        rec.iterations = rep.iterations;
        rec.wall_seconds = rep.wall_time_seconds;

        const Matrix truth_B = stack_rows(ds.Bk);
        const std::vector<Matrix> truth{ds.A, truth_B, ds.C};
        const std::vector<Matrix> estimated{est.A, est.B_concat, est.C};
        const ComponentMatching matching = match_components(truth, estimated);
        rec.fms_a = fms(ds.A, est.A, matching);
        rec.fms_b = fms(truth_B, est.B_concat, matching);
        rec.fms_c = fms(ds.C, est.C, matching);
        rec.clustering = clustering_accuracy(est.A, ds.labels, n_clusters);
        rec.unique = starts_for_uniqueness.size() >= 2
                         ? uniqueness_check(starts_for_uniqueness).unique
                         : true;
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
    }
  };

  int workers = cfg.workers > 0 ? cfg.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(n_tasks));
  if (workers <= 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1)) run_task(t);
      });
    for (auto& th : pool) th.join();
  }

  // Keyed aggregation: cell-major, method-minor, independent of run order.
  for (std::size_t ci = 0; ci < grid.size(); ++ci)
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      CellSummary sum;
      sum.cell = grid[ci];
      sum.method = cfg.methods[mi];
      sum.n_datasets = cfg.n_datasets;
      int n_ok = 0;
      for (int d = 0; d < cfg.n_datasets; ++d) {
        const RunRecord& rec =
            table.runs[(ci * static_cast<std::size_t>(cfg.n_datasets) + d) * n_methods + mi];
        if (rec.failed) {
          ++sum.n_failed;
          continue;
        }
        ++n_ok;
        sum.mean_fit += rec.fit;
        sum.mean_clustering += rec.clustering;
        sum.mean_fms_a += rec.fms_a;
        sum.mean_fms_b += rec.fms_b;
        sum.mean_fms_c += rec.fms_c;
      }
      if (n_ok > 0) {
        sum.mean_fit /= n_ok;
        sum.mean_clustering /= n_ok;
        sum.mean_fms_a /= n_ok;
        sum.mean_fms_b /= n_ok;
        sum.mean_fms_c /= n_ok;
      }
      table.rows.push_back(sum);
    }
  return table;
}

namespace {

BSetup parse_b_setup(const std::string& s, const std::string& key) {
  if (s == "random") return BSetup::Random;
  if (s == "network") return BSetup::Network;
  throw format_error("key `" + key + "`: expected \"random\" or \"network\", got \"" + s + "\"");
}

CSetup parse_c_setup(const std::string& s, const std::string& key) {
  if (s == "random") return CSetup::Random;
  if (s == "trends") return CSetup::Trends;
  throw format_error("key `" + key + "`: expected \"random\" or \"trends\", got \"" + s + "\"");
}

Method parse_method(const std::string& s, const std::string& key) {
  if (s == "cp") return Method::Cp;
  if (s == "parafac2") return Method::Parafac2;
  throw format_error("key `" + key + "`: expected \"cp\" or \"parafac2\", got \"" + s + "\"");
}

template <typename T>
T get_checked(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw format_error("key `" + key + "`: wrong type");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw format_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw format_error("config root must be a JSON object");

  static const std::vector<std::string> known = {
      "dims",        "rank",          "noise_levels",  "c_setups",       "b_setups",
      "n_datasets",  "methods",       "seed",          "n_starts",       "max_iterations",
      "tolerance",   "nonneg_c",      "workers",       "out_dir",        "cluster_sizes",
      "cluster_offset", "cluster_jitter", "network_base_width", "network_grow_per_window",
      "network_shift_per_window", "network_jitter"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw format_error("unknown key `" + item.key() + "`");

  ExperimentConfig cfg;
  if (j.contains("dims")) {
    const auto dims = get_checked<std::vector<long long>>(j, "dims");
    if (dims.size() != 3 || dims[0] < 1 || dims[1] < 1 || dims[2] < 1)
      throw format_error("key `dims`: expected three positive extents");
    cfg.base.I = static_cast<Index>(dims[0]);
    cfg.base.J = static_cast<Index>(dims[1]);
    cfg.base.K = static_cast<Index>(dims[2]);
  }
  if (j.contains("rank")) {
    cfg.base.rank = get_checked<long long>(j, "rank");
    if (cfg.base.rank < 1) throw format_error("key `rank`: must be >= 1");
    cfg.fit.rank = cfg.base.rank;
  }
  if (j.contains("noise_levels")) {
    cfg.noise_levels = get_checked<std::vector<double>>(j, "noise_levels");
    if (cfg.noise_levels.empty()) throw format_error("key `noise_levels`: must be non-empty");
    for (double eta : cfg.noise_levels)
      if (!(eta >= 0.0)) throw format_error("key `noise_levels`: noise level must be >= 0");
  }
  if (j.contains("c_setups")) {
    cfg.c_setups.clear();
    for (const auto& s : get_checked<std::vector<std::string>>(j, "c_setups"))
      cfg.c_setups.push_back(parse_c_setup(s, "c_setups"));
    if (cfg.c_setups.empty()) throw format_error("key `c_setups`: must be non-empty");
  }
  if (j.contains("b_setups")) {
    cfg.b_setups.clear();
    for (const auto& s : get_checked<std::vector<std::string>>(j, "b_setups"))
      cfg.b_setups.push_back(parse_b_setup(s, "b_setups"));
    if (cfg.b_setups.empty()) throw format_error("key `b_setups`: must be non-empty");
  }
  if (j.contains("n_datasets")) {
    cfg.n_datasets = get_checked<int>(j, "n_datasets");
    if (cfg.n_datasets < 1) throw format_error("key `n_datasets`: must be >= 1");
  }
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& s : get_checked<std::vector<std::string>>(j, "methods"))
      cfg.methods.push_back(parse_method(s, "methods"));
    if (cfg.methods.empty()) throw format_error("key `methods`: must be non-empty");
  }
  if (j.contains("seed")) cfg.master_seed = get_checked<std::uint64_t>(j, "seed");
  if (j.contains("n_starts")) {
    cfg.fit.n_starts = get_checked<int>(j, "n_starts");
    if (cfg.fit.n_starts < 1) throw format_error("key `n_starts`: must be >= 1");
  }
  if (j.contains("max_iterations")) {
    cfg.fit.max_iterations = get_checked<int>(j, "max_iterations");
    if (cfg.fit.max_iterations < 1) throw format_error("key `max_iterations`: must be >= 1");
  }
  if (j.contains("tolerance")) {
    cfg.fit.tolerance = get_checked<double>(j, "tolerance");
    if (!(cfg.fit.tolerance > 0.0)) throw format_error("key `tolerance`: must be > 0");
  }
  if (j.contains("nonneg_c")) cfg.nonneg_c = get_checked<bool>(j, "nonneg_c");
  if (j.contains("workers")) {
    cfg.workers = get_checked<int>(j, "workers");
    if (cfg.workers < 0) throw format_error("key `workers`: must be >= 0");
  }
  if (j.contains("out_dir")) cfg.out_dir = get_checked<std::string>(j, "out_dir");
  if (j.contains("cluster_sizes")) {
    const auto sizes = get_checked<std::vector<long long>>(j, "cluster_sizes");
    cfg.base.cluster_sizes.clear();
    for (long long s : sizes) {
      if (s < 1) throw format_error("key `cluster_sizes`: sizes must be >= 1");
      cfg.base.cluster_sizes.push_back(static_cast<Index>(s));
    }
    if (cfg.base.cluster_sizes.empty())
      throw format_error("key `cluster_sizes`: must be non-empty");
  }
  if (j.contains("cluster_offset")) cfg.base.cluster_offset = get_checked<double>(j, "cluster_offset");
  if (j.contains("cluster_jitter")) {
    cfg.base.cluster_jitter = get_checked<double>(j, "cluster_jitter");
    if (cfg.base.cluster_jitter < 0.0) throw format_error("key `cluster_jitter`: must be >= 0");
  }
  if (j.contains("network_base_width")) {
    cfg.base.network.base_width = get_checked<int>(j, "network_base_width");
    if (cfg.base.network.base_width < 1)
      throw format_error("key `network_base_width`: must be >= 1");
  }
  if (j.contains("network_grow_per_window"))
    cfg.base.network.grow_per_window = get_checked<int>(j, "network_grow_per_window");
  if (j.contains("network_shift_per_window"))
    cfg.base.network.shift_per_window = get_checked<int>(j, "network_shift_per_window");
  if (j.contains("network_jitter")) {
    cfg.base.network.jitter = get_checked<double>(j, "network_jitter");
    if (cfg.base.network.jitter < 0.0) throw format_error("key `network_jitter`: must be >= 0");
  }

  const Index total = std::accumulate(cfg.base.cluster_sizes.begin(),
                                      cfg.base.cluster_sizes.end(), Index{0});
  if (total != cfg.base.I)
    throw format_error("key `cluster_sizes`: sizes must sum to the first extent (" +
                       std::to_string(cfg.base.I) + ")");
  return cfg;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot open for writing: " + path);
  return out;
}

const CellSummary* find_row(const ResultsTable& table, const GridCell& cell, Method m) {
  for (const CellSummary& row : table.rows)
    if (row.method == m && row.cell.noise == cell.noise && row.cell.c_setup == cell.c_setup &&
        row.cell.b_setup == cell.b_setup)
      return &row;
  return nullptr;
}

std::vector<GridCell> distinct_cells(const ResultsTable& table) {
  std::vector<GridCell> cells;
  for (const CellSummary& row : table.rows) {
    bool seen = false;
    for (const GridCell& c : cells)
      if (c.noise == row.cell.noise && c.c_setup == row.cell.c_setup &&
          c.b_setup == row.cell.b_setup)
        seen = true;
    if (!seen) cells.push_back(row.cell);
  }
  return cells;
}

}  // namespace

void write_results_csv(const ResultsTable& table, const std::string& path) {
  std::ofstream out = open_out(path);
  out << std::setprecision(10);
  out << "noise,c_setup,b_setup";
  for (const char* metric : {"fit", "clustering_acc", "fms_A", "fms_B", "fms_C", "n_failed"})
    for (const char* m : {"cp", "pf2"}) out << ',' << metric << '_' << m;
  out << '\n';
  for (const GridCell& cell : distinct_cells(table)) {
    out << cell.noise << ',' << to_string(cell.c_setup) << ',' << to_string(cell.b_setup);
    const CellSummary* cp = find_row(table, cell, Method::Cp);
    const CellSummary* pf2 = find_row(table, cell, Method::Parafac2);
    const auto emit = [&](const CellSummary* row, auto proj) {
      out << ',';
      if (row) out << proj(*row);
    };
    for (int metric = 0; metric < 6; ++metric)
      for (const CellSummary* row : {cp, pf2}) switch (metric) {
          case 0: emit(row, [](const CellSummary& r) { return r.mean_fit; }); break;
          case 1: emit(row, [](const CellSummary& r) { return r.mean_clustering; }); break;
          case 2: emit(row, [](const CellSummary& r) { return r.mean_fms_a; }); break;
          case 3: emit(row, [](const CellSummary& r) { return r.mean_fms_b; }); break;
          case 4: emit(row, [](const CellSummary& r) { return r.mean_fms_c; }); break;
          case 5: emit(row, [](const CellSummary& r) { return double(r.n_failed); }); break;
        }
    out << '\n';
  }
  if (!out) throw format_error("write failed: " + path);
}

void write_results_json(const ResultsTable& table, const std::string& path) {
  json runs = json::array();
  for (const RunRecord& r : table.runs) {
    json rec{{"noise", r.cell.noise},
             {"c_setup", to_string(r.cell.c_setup)},
             {"b_setup", to_string(r.cell.b_setup)},
             {"dataset", r.dataset},
             {"method", to_string(r.method)},
             {"seed", r.seed}};
    if (r.failed) {
      rec["failed"] = true;
      rec["error"] = r.error;
    } else {
      rec["fit"] = r.fit;
      rec["fms_A"] = r.fms_a;
      rec["fms_B"] = r.fms_b;
      rec["fms_C"] = r.fms_c;
      rec["clustering_acc"] = r.clustering;
      rec["unique"] = r.unique;
      rec["converged"] = r.converged;
      rec["iterations"] = r.iterations;
      rec["wall_seconds"] = r.wall_seconds;
    }
    runs.push_back(std::move(rec));
  }
  std::ofstream out = open_out(path);
  out << runs.dump(2) << '\n';
  if (!out) throw format_error("write failed: " + path);
}

std::string format_results_table(const ResultsTable& table) {
  std::ostringstream os;
  os << "noise  C setup  B setup  |    fit[%] cp/pf2 |  clust[%] cp/pf2 |"
        "  FMS_A cp/pf2 |  FMS_B cp/pf2 |  FMS_C cp/pf2\n";
  for (const GridCell& cell : distinct_cells(table)) {
    const CellSummary* cp = find_row(table, cell, Method::Cp);
    const CellSummary* pf2 = find_row(table, cell, Method::Parafac2);
    os << std::setw(5) << cell.noise << "  " << std::setw(7) << to_string(cell.c_setup) << "  "
       << std::setw(7) << to_string(cell.b_setup) << "  |";
    const auto pair = [&](auto proj, int width, int prec) {
      os << ' ';
      for (const CellSummary* row : {cp, pf2}) {
        os << std::setw(width);
        if (row)
          os << std::fixed << std::setprecision(prec) << proj(*row);
        else
          os << "-";
        os << (row == cp ? "/" : " ");
      }
      os << '|';
    };
    pair([](const CellSummary& r) { return r.mean_fit; }, 7, 1);
    pair([](const CellSummary& r) { return r.mean_clustering; }, 7, 1);
    pair([](const CellSummary& r) { return r.mean_fms_a; }, 5, 2);
    pair([](const CellSummary& r) { return r.mean_fms_b; }, 5, 2);
    pair([](const CellSummary& r) { return r.mean_fms_c; }, 5, 2);
    os << '\n';
  }
  return os.str();
}

namespace {

json report_to_json(const FitReport& rep) {
  return json{{"fit", rep.fit},
              {"converged", rep.converged},
              {"iterations", rep.iterations},
              {"seed", rep.seed},
              {"wall_seconds", rep.wall_time_seconds},
              {"loss_trace", rep.loss_trace}};
}

}  // namespace

FitReport fit_command(const std::string& tensor_path, Method method, const FitOptions& opts,
                      bool nonneg_c, const std::string& out_dir) {
  const DenseTensor3 T = read_tns3(tensor_path);
  fs::create_directories(out_dir);
  const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
  FitReport rep;
  if (method == Method::Cp) {
    auto [model, report] = cp_als(T, opts);
    rep = report;
    write_factor_csv(model.A, path("A.csv"));
    write_factor_csv(model.B, path("B.csv"));
    write_factor_csv(model.C, path("C.csv"));
  } else {
    auto [model, report] = pf2_als(T, opts, nonneg_c);
    rep = report;
    write_factor_csv(model.A, path("A.csv"));
    write_factor_csv(model.H, path("H.csv"));
    write_factor_csv(model.C, path("C.csv"));
    write_stacked_csv(model.P, path("P.csv"));
    write_stacked_csv(model.B(), path("B.csv"));
  }
  std::ofstream out = open_out(path("report.json"));
  out << report_to_json(rep).dump(2) << '\n';
  return rep;
}

MetricsRecord evaluate_command(const std::string& tensor_path, const std::string& truth_dir,
                               const std::string& model_dir, Method method) {
  const DenseTensor3 X = read_tns3(tensor_path);
  const auto tpath = [&](const char* name) { return (fs::path(truth_dir) / name).string(); };
  const auto mpath = [&](const char* name) { return (fs::path(model_dir) / name).string(); };

  const Matrix truth_A = read_factor_csv(tpath("truth_A.csv"));
  const std::vector<Matrix> truth_Bk = read_stacked_csv(tpath("truth_B.csv"));
  const Matrix truth_C = read_factor_csv(tpath("truth_C.csv"));
  const std::vector<int> labels = read_labels_csv(tpath("labels.csv"));
  const Index K = static_cast<Index>(truth_Bk.size());

  const Matrix est_A = read_factor_csv(mpath("A.csv"));
  const Matrix est_C = read_factor_csv(mpath("C.csv"));
  std::vector<Matrix> est_Bk;
  DenseTensor3 Xhat;
  if (method == Method::Cp) {
    const Matrix est_B = read_factor_csv(mpath("B.csv"));
    est_Bk.assign(static_cast<std::size_t>(K), est_B);
    Xhat = reconstruct_cp(est_A, est_B, est_C);
  } else {
    est_Bk = read_stacked_csv(mpath("B.csv"));
    Xhat = reconstruct_parafac2(est_A, est_Bk, est_C);
  }

  MetricsRecord rec;
  rec.fit = fit_score(X, Xhat);
  const Matrix truth_B = stack_rows(truth_Bk);
  const Matrix est_B = stack_rows(est_Bk);
  const ComponentMatching matching =
      match_components({truth_A, truth_B, truth_C}, {est_A, est_B, est_C});
  rec.fms_a = fms(truth_A, est_A, matching);
  rec.fms_b = fms_evolving(truth_Bk, est_Bk, matching);
  rec.fms_c = fms(truth_C, est_C, matching);
  std::vector<int> distinct(labels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  rec.clustering = clustering_accuracy(est_A, labels, static_cast<int>(distinct.size()));
  return rec;
}

void write_metrics_json(const MetricsRecord& rec, const std::string& path) {
  json j{{"fit", rec.fit},
         {"fms_A", rec.fms_a},
         {"fms_B", rec.fms_b},
         {"fms_C", rec.fms_c},
         {"clustering_acc", rec.clustering}};
  j["unique"] = rec.unique.has_value() ? json(*rec.unique) : json(nullptr);
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw format_error("write failed: " + path);
}

void simulate_command(const SimConfig& cfg, const std::string& out_dir) {
  const SimDataset ds = gen_dataset(cfg);
  fs::create_directories(out_dir);
  const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
  write_tns3(ds.noisy, path("tensor.tns3"));
  write_tns3(ds.clean, path("clean.tns3"));
  write_factor_csv(ds.A, path("truth_A.csv"));
  write_stacked_csv(ds.Bk, path("truth_B.csv"));
  write_factor_csv(ds.C, path("truth_C.csv"));
  write_labels_csv(ds.labels, path("labels.csv"));

  json j{{"dims", {cfg.I, cfg.J, cfg.K}},
         {"rank", cfg.rank},
         {"b_setup", to_string(cfg.b_setup)},
         {"c_setup", to_string(cfg.c_setup)},
         {"noise", cfg.noise},
         {"seed", cfg.seed},
         {"cluster_sizes", cfg.cluster_sizes},
         {"cluster_offset", cfg.cluster_offset},
         {"cluster_jitter", cfg.cluster_jitter},
         {"network_base_width", cfg.network.base_width},
         {"network_grow_per_window", cfg.network.grow_per_window},
         {"network_shift_per_window", cfg.network.shift_per_window},
         {"network_jitter", cfg.network.jitter}};
  std::ofstream out = open_out(path("config.json"));
  out << j.dump(2) << '\n';
  if (!out) throw format_error("write failed: " + path("config.json"));
}

}  // namespace dynten
