#pragma once

#include <utility>
#include <vector>

#include "dynten/tensor.hpp"

namespace dynten {

struct FitOptions {
  Index rank = 4;
  int max_iterations = 2000;
  double tolerance = 1e-8;  ///< relative loss change per sweep
  std::uint64_t seed = 0;
  int n_starts = 10;
};

/// Per-run record of one alternating least squares fit.
struct FitReport {
  double fit = 0.0;  ///< 100 * (1 - ||X - Xhat||^2 / ||X||^2)
  std::vector<double> loss_trace;  ///< squared residual norm per sweep, element 0 = initial
  bool converged = false;
  int iterations = 0;
  std::uint64_t seed = 0;  ///< derived seed of the winning start
  double wall_time_seconds = 0.0;
};

/// CP factors. After fitting, columns of A and B are unit norm with scale
/// absorbed into C, and each column of C has a nonnegative column sum.
struct CpModel {
  Matrix A;
  Matrix B;
  Matrix C;
};

struct CpStartResult {
  CpModel model;
  FitReport report;
};

/// One ALS block update: the exact least-squares minimizer of
/// ||kr * factor^T - unfolding^T||_F, i.e. factor = unfolding * kr * (kr^T kr)^+.
Matrix cp_mode_update(const Matrix& unfolding, const Matrix& kr);

/// Rank-R CP fit by alternating least squares with Gaussian random starts.
/// Returns the best-fit start; ties break toward the lowest start index.
/// When `all_starts` is given, every start's normalized model and report is
/// collected there (in start order) for uniqueness validation.
std::pair<CpModel, FitReport> cp_als(const DenseTensor3& T, const FitOptions& opts,
                                     std::vector<CpStartResult>* all_starts = nullptr);

}  // namespace dynten
