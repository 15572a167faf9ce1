#pragma once

#include <random>

#include "dynten/common.hpp"

namespace dynten {

struct ThinSvd {
  Matrix U;  ///< m x r, orthonormal columns
  Vector S;  ///< r singular values, descending
  Matrix V;  ///< n x r, orthonormal columns
};

/// Thin SVD with r = min(m, n). M = U * diag(S) * V^T.
ThinSvd thin_svd(const Matrix& M);

/// Column-orthonormal P (n x r) maximizing trace(P^T F) for n >= r,
/// i.e. P = U V^T from the thin SVD of F. Rank-deficient F still yields a
/// valid maximizer; `*degenerate` is set when one is detected.
Matrix orthogonal_procrustes(const Matrix& F, bool* degenerate = nullptr);

/// Minimum-norm least-squares solution of min ||M X - Y||_F.
Matrix solve_lstsq(const Matrix& M, const Matrix& Y);

/// Eigenvectors of a symmetric matrix for the r largest eigenvalues, in
/// descending eigenvalue order. Columns beyond the matrix dimension are
/// filled with seeded Gaussian entries.
Matrix leading_eigenvectors(const Matrix& sym, Index r, std::uint64_t fill_seed = 0);

/// Non-negative least squares min ||M x - y||_2 s.t. x >= 0, solved to an
/// exact KKT point by the Lawson-Hanson active-set method.
Vector nnls(const Matrix& M, const Vector& y);

/// Stateless seed splitting: child streams for (seed, salt) pairs never
/// collide with the parent stream for practical purposes.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// Seeded PRNG. Identical seed + identical call sequence gives an
/// identical stream within a build; streams are not specified to be
/// bit-identical across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }

  /// Column-major fill of i.i.d. N(0,1) entries.
  Matrix gaussian_matrix(Index rows, Index cols);
  /// Column-major fill of i.i.d. U[0,1) entries.
  Matrix uniform_matrix(Index rows, Index cols);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Matrix random_gaussian_matrix(Index rows, Index cols, std::uint64_t seed);
Matrix random_uniform_matrix(Index rows, Index cols, std::uint64_t seed);

}  // namespace dynten
