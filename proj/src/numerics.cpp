#include "dynten/numerics.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace dynten {

ThinSvd thin_svd(const Matrix& M) {
  if (!M.allFinite()) throw std::invalid_argument("thin_svd: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw numeric_error("thin_svd: SVD failed to converge on a " + std::to_string(M.rows()) +
                        "x" + std::to_string(M.cols()) + " matrix");
  return ThinSvd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Matrix orthogonal_procrustes(const Matrix& F, bool* degenerate) {
  if (F.rows() < F.cols())
    throw std::invalid_argument("orthogonal_procrustes: needs rows >= cols");
  ThinSvd svd = thin_svd(F);
  if (degenerate) {
    const double smax = svd.S.size() ? svd.S(0) : 0.0;
    const double tol = static_cast<double>(std::max(F.rows(), F.cols())) *
                       std::numeric_limits<double>::epsilon() * smax;
    *degenerate = svd.S.size() == 0 || svd.S(svd.S.size() - 1) <= tol;
  }
  return svd.U * svd.V.transpose();
}

Matrix solve_lstsq(const Matrix& M, const Matrix& Y) {
  if (M.rows() != Y.rows()) throw std::invalid_argument("solve_lstsq: row mismatch");
  if (!M.allFinite() || !Y.allFinite())
    throw std::invalid_argument("solve_lstsq: non-finite entries");
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(M);
  return cod.solve(Y);
}

Matrix leading_eigenvectors(const Matrix& sym, Index r, std::uint64_t fill_seed) {
  if (sym.rows() != sym.cols()) throw std::invalid_argument("leading_eigenvectors: not square");
  if (r < 1) throw std::invalid_argument("leading_eigenvectors: r must be >= 1");
  const Index n = sym.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success)
    throw numeric_error("leading_eigenvectors: eigensolver failed on a " + std::to_string(n) +
                        "x" + std::to_string(n) + " matrix");
  const Index take = std::min(n, r);
  Matrix V(n, r);
  V.leftCols(take) = eig.eigenvectors().rightCols(take).rowwise().reverse();
  if (take < r) V.rightCols(r - take) = SeededRng(fill_seed).gaussian_matrix(n, r - take);
  return V;
}

Vector nnls(const Matrix& M, const Vector& y) {
  if (M.rows() != y.size()) throw std::invalid_argument("nnls: dimension mismatch");
  if (!M.allFinite() || !y.allFinite()) throw std::invalid_argument("nnls: non-finite entries");
  const Index n = M.cols();

  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  Index n_passive = 0;

  Vector w = M.transpose() * y;  // negative gradient at x = 0
  const double tol = 1e-12 * std::max(1.0, w.size() ? w.cwiseAbs().maxCoeff() : 0.0);

  // Restricted least squares on the passive set, scattered back to size n.
  std::vector<Index> cols;
  const auto solve_passive = [&](Vector& z) {
    cols.clear();
    for (Index i = 0; i < n; ++i)
      if (passive[static_cast<std::size_t>(i)]) cols.push_back(i);
    z.setZero(n);
    if (cols.empty()) return;
    Matrix Mp(M.rows(), static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) Mp.col(static_cast<Index>(c)) = M.col(cols[c]);
    const Vector zp = solve_lstsq(Mp, y);
    for (std::size_t c = 0; c < cols.size(); ++c) z(cols[c]) = zp(static_cast<Index>(c));
  };

  const int max_iter = 60 * static_cast<int>(std::max<Index>(n, 1));
  int iter = 0;
  Vector z(n);
  Vector wsel = w;  // selection copy; rejected candidates are masked off
  while (n_passive < std::min(n, M.rows())) {
    // Most violating coordinate among the active (zero) set.
    Index j = -1;
    double wmax = tol;
    for (Index i = 0; i < n; ++i)
      if (!passive[static_cast<std::size_t>(i)] && wsel(i) > wmax) {
        wmax = wsel(i);
        j = i;
      }
    if (j < 0) break;  // KKT satisfied
    passive[static_cast<std::size_t>(j)] = true;
    ++n_passive;
    solve_passive(z);
    if (z(j) <= 0.0) {
      // Near-dependent candidate whose apparent gradient is rounding noise;
      // reject it and retry selection (Lawson-Hanson safeguard).
      passive[static_cast<std::size_t>(j)] = false;
      --n_passive;
      wsel(j) = 0.0;
      if (++iter > max_iter)
        throw numeric_error("nnls: no convergence after " + std::to_string(iter) +
                            " active-set iterations (n=" + std::to_string(n) + ")");
      continue;
    }

    for (;;) {
      bool feasible = true;
      for (Index i = 0; i < n; ++i)
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
          feasible = false;
          break;
        }
      if (feasible) {
        x = z;
        break;
      }
      // Step toward z until the first passive coordinate hits zero.
      double alpha = 1.0;
      for (Index i = 0; i < n; ++i)
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
          const double denom = x(i) - z(i);
          if (denom > 0.0) alpha = std::min(alpha, x(i) / denom);
        }
      for (Index i = 0; i < n; ++i)
        if (passive[static_cast<std::size_t>(i)]) x(i) += alpha * (z(i) - x(i));
      for (Index i = 0; i < n; ++i)
        if (passive[static_cast<std::size_t>(i)] && x(i) <= tol) {
          passive[static_cast<std::size_t>(i)] = false;
          --n_passive;
          x(i) = 0.0;
        }
      if (++iter > max_iter)
        throw numeric_error("nnls: inner loop stalled after " + std::to_string(iter) +
                            " iterations (n=" + std::to_string(n) + ")");
      solve_passive(z);
    }
    w.noalias() = M.transpose() * (y - M * x);
    wsel = w;
    if (++iter > max_iter)
      throw numeric_error("nnls: no convergence after " + std::to_string(iter) +
                          " active-set iterations (n=" + std::to_string(n) + ")");
  }
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  // SplitMix64 finalizer over a salted input.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Matrix SeededRng::gaussian_matrix(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("gaussian_matrix: dims must be positive");
  Matrix M(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) M(r, c) = gaussian();
  return M;
}

Matrix SeededRng::uniform_matrix(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("uniform_matrix: dims must be positive");
  Matrix M(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) M(r, c) = uniform();
  return M;
}

Matrix random_gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  return SeededRng(seed).gaussian_matrix(rows, cols);
}

Matrix random_uniform_matrix(Index rows, Index cols, std::uint64_t seed) {
  return SeededRng(seed).uniform_matrix(rows, cols);
}

}  // namespace dynten
