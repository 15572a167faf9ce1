#pragma once

#include <vector>

#include "dynten/tensor.hpp"

namespace dynten {

/// Component correspondence between a true and an estimated model.
/// perm[r] is the estimated component matched to true component r; scores
/// holds the matched products of per-mode congruences.
struct ComponentMatching {
  std::vector<Index> perm;
  Vector scores;
};

/// Model fit percentage: 100 * (1 - ||X - Xhat||^2 / ||X||^2).
/// Negative for reconstructions worse than the zero model.
double fit_score(const DenseTensor3& X, const DenseTensor3& Xhat);

/// Fixes the permutation ambiguity: maximizes the sum over components of
/// the product across modes of absolute normalized congruences, solved
/// exactly as a maximum-weight bipartite assignment.
ComponentMatching match_components(const std::vector<Matrix>& true_factors,
                                   const std::vector<Matrix>& est_factors);

/// Factor match score over matched columns:
/// (1/R) sum_r |u_r^T uhat_r| / (||u_r|| ||uhat_r||).
double fms(const Matrix& U, const Matrix& Uhat, const ComponentMatching& matching);

/// FMS of the evolving mode: both factor lists are concatenated
/// vertically into (J*K) x R matrices first. CP models must pass K copies
/// of their single B.
double fms_evolving(const std::vector<Matrix>& Bk_true, const std::vector<Matrix>& Bk_est,
                    const ComponentMatching& matching);

/// Best k-means clustering accuracy (percent) over every non-empty subset
/// of factor columns. Each subset runs seeded k-means++ with multiple
/// restarts; accuracy is the best label-assignment match fraction.
double clustering_accuracy(const Matrix& Ahat, const std::vector<int>& labels, int n_clusters);

struct TTestResult {
  double t;
  double p;  ///< two-sided
};

/// Two-sample pooled-variance t-test with n_x + n_y - 2 degrees of
/// freedom; the pooled variance uses divisor n_x + n_y. Zero pooled
/// variance yields t = 0, p = 1 for equal means and infinite t, p = 0
/// otherwise.
TTestResult two_sample_ttest(const std::vector<double>& x, const std::vector<double>& y);

/// One fitted model flattened to per-mode factor matrices (the evolving
/// mode enters concatenated) plus its fit percentage.
struct FittedRun {
  double fit = 0.0;
  std::vector<Matrix> factors;
};

struct UniquenessReport {
  bool unique = false;
  int n_candidates = 0;   ///< runs within 0.1 fit points of the best
  double min_fms = 1.0;   ///< worst per-mode FMS of any candidate vs the best
};

/// True iff every run within 0.1 fit-percentage-points of the best agrees
/// with the best run at FMS >= 0.99 in every mode.
UniquenessReport uniqueness_check(const std::vector<FittedRun>& runs);

namespace detail {

/// Exact maximum-weight assignment (Hungarian method, O(n^3)).
/// Returns perm with perm[row] = assigned column.
std::vector<Index> max_weight_assignment(const Matrix& weights);

struct KmeansResult {
  std::vector<int> labels;
  double sse;
};

/// Lloyd's algorithm with k-means++ seeding; deterministic given seed.
KmeansResult kmeans(const Matrix& X, int k, std::uint64_t seed, int max_iter = 100);

}  // namespace detail

}  // namespace dynten
