#include "dynten/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dynten {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot open for writing: " + path);
  out << std::setprecision(17);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open: " + path);
  return in;
}

// Parses every whitespace-separated token on `line` as a double.
void parse_doubles(const std::string& line, long lineno, std::vector<double>& out) {
  const char* p = line.c_str();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p >= end) break;
    char* next = nullptr;
    const double v = std::strtod(p, &next);
    if (next == p) throw format_error("invalid numeric token", lineno);
    if (!std::isfinite(v)) throw format_error("non-finite value", lineno);
    out.push_back(v);
    p = next;
  }
}

}  // namespace

void write_tns3(const DenseTensor3& T, const std::string& path) {
  std::ofstream out = open_out(path);
  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  out << "TNS3 " << I << ' ' << J << ' ' << K << '\n';
  const double* v = T.data();
  for (Index k = 0; k < K; ++k)
    for (Index i = 0; i < I; ++i) {
      for (Index j = 0; j < J; ++j) out << v[(k * I + i) * J + j] << (j + 1 < J ? ' ' : '\n');
    }
  if (!out) throw format_error("write failed: " + path);
}

DenseTensor3 read_tns3(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw format_error("empty file: " + path, 1);
  std::istringstream header(line);
  std::string magic;
  long long I = 0, J = 0, K = 0;
  if (!(header >> magic >> I >> J >> K) || magic != "TNS3" || I <= 0 || J <= 0 || K <= 0)
    throw format_error("bad TNS3 header, expected `TNS3 I J K`", 1);
  std::string rest;
  if (header >> rest) throw format_error("trailing token after TNS3 header", 1);

  const std::size_t expected = static_cast<std::size_t>(I) * J * K;
  std::vector<double> values;
  values.reserve(expected);
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    parse_doubles(line, lineno, values);
    if (values.size() > expected)
      throw format_error("more values than I*J*K = " + std::to_string(expected), lineno);
  }
  if (values.size() != expected)
    throw format_error("expected " + std::to_string(expected) + " values, got " +
                           std::to_string(values.size()),
                       lineno);
  return DenseTensor3(static_cast<Index>(I), static_cast<Index>(J), static_cast<Index>(K),
                      std::move(values));
}

void write_factor_csv(const Matrix& M, const std::string& path) {
  std::ofstream out = open_out(path);
  for (Index r = 0; r < M.cols(); ++r) out << (r ? "," : "") << "component_" << (r + 1);
  out << '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index r = 0; r < M.cols(); ++r) out << (r ? "," : "") << M(i, r);
    out << '\n';
  }
  if (!out) throw format_error("write failed: " + path);
}

namespace {

std::vector<std::vector<double>> read_csv_rows(std::ifstream& in, const std::string& path,
                                               std::size_t skip_cols, long* last_line) {
  std::string line;
  if (!std::getline(in, line)) throw format_error("empty CSV: " + path, 1);
  std::vector<std::vector<double>> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col++ < skip_cols) continue;
      char* next = nullptr;
      const double v = std::strtod(cell.c_str(), &next);
      if (next == cell.c_str()) throw format_error("invalid CSV cell `" + cell + "`", lineno);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw format_error("ragged CSV row", lineno);
    rows.push_back(std::move(row));
  }
  if (last_line) *last_line = lineno;
  return rows;
}

}  // namespace

Matrix read_factor_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  auto rows = read_csv_rows(in, path, 0, nullptr);
  if (rows.empty()) throw format_error("CSV has no data rows: " + path);
  Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j) M(i, j) = rows[i][j];
  return M;
}

void write_stacked_csv(const std::vector<Matrix>& mats, const std::string& path) {
  if (mats.empty()) throw std::invalid_argument("write_stacked_csv: empty list");
  std::ofstream out = open_out(path);
  out << "k";
  for (Index r = 0; r < mats.front().cols(); ++r) out << ",component_" << (r + 1);
  out << '\n';
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const Matrix& M = mats[k];
    for (Index i = 0; i < M.rows(); ++i) {
      out << k;
      for (Index r = 0; r < M.cols(); ++r) out << ',' << M(i, r);
      out << '\n';
    }
  }
  if (!out) throw format_error("write failed: " + path);
}

std::vector<Matrix> read_stacked_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw format_error("empty CSV: " + path, 1);
  std::vector<std::vector<std::vector<double>>> groups;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) throw format_error("missing k column", lineno);
    const long k = std::strtol(cell.c_str(), nullptr, 10);
    if (k < 0) throw format_error("negative k index", lineno);
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      char* next = nullptr;
      const double v = std::strtod(cell.c_str(), &next);
      if (next == cell.c_str()) throw format_error("invalid CSV cell `" + cell + "`", lineno);
      row.push_back(v);
    }
    if (static_cast<std::size_t>(k) >= groups.size()) groups.resize(k + 1);
    groups[k].push_back(std::move(row));
  }
  if (groups.empty()) throw format_error("stacked CSV has no data rows: " + path);
  std::vector<Matrix> mats;
  const std::size_t J = groups.front().size();
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    if (g.empty() || g.size() != J)
      throw format_error("stacked CSV: slice " + std::to_string(k) + " has inconsistent rows");
    Matrix M(static_cast<Index>(g.size()), static_cast<Index>(g.front().size()));
    for (Index i = 0; i < M.rows(); ++i) {
      if (static_cast<Index>(g[i].size()) != M.cols())
        throw format_error("ragged stacked CSV at slice " + std::to_string(k));
      for (Index j = 0; j < M.cols(); ++j) M(i, j) = g[i][j];
    }
    mats.push_back(std::move(M));
  }
  return mats;
}

void write_labels_csv(const std::vector<int>& labels, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "label\n";
  for (int l : labels) out << l << '\n';
  if (!out) throw format_error("write failed: " + path);
}

std::vector<int> read_labels_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw format_error("empty labels CSV: " + path, 1);
  std::vector<int> labels;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    char* next = nullptr;
    const long v = std::strtol(line.c_str(), &next, 10);
    if (next == line.c_str()) throw format_error("invalid label `" + line + "`", lineno);
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

}  // namespace dynten
