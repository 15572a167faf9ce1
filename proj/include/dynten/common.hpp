#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynten {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Iterative kernel failed to converge. what() carries iteration diagnostics.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file. line() is 1-based when known, 0 otherwise.
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& msg, long line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_ = 0;
};

namespace detail {

/// Kahan-compensated sum of squares. Loss traces are checked for
/// monotonicity at 1e-10 absolute, which a naive vectorized sum cannot
/// guarantee at 1e5+ entries.
inline double sum_squares(const double* p, std::ptrdiff_t n) {
  double s = 0.0;
  double c = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double term = p[i] * p[i] - c;
    const double t = s + term;
    c = (t - s) - term;
    s = t;
  }
  return s;
}

inline double sum_squares(const Matrix& m) { return sum_squares(m.data(), m.size()); }

}  // namespace detail

}  // namespace dynten
