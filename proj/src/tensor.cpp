#include "dynten/tensor.hpp"

#include <cmath>
#include <utility>

namespace dynten {

namespace {

using RowMajorMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                    Eigen::RowMajor>>;
using RowMajorMutMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void check_dims(Index I, Index J, Index K) {
  if (I <= 0 || J <= 0 || K <= 0)
    throw std::invalid_argument("DenseTensor3: extents must be positive");
}

}  // namespace

DenseTensor3::DenseTensor3(Index I, Index J, Index K) {
  check_dims(I, J, K);
  dims_[0] = I;
  dims_[1] = J;
  dims_[2] = K;
  v_.assign(static_cast<std::size_t>(I * J * K), 0.0);
}

DenseTensor3::DenseTensor3(Index I, Index J, Index K, std::vector<double> values) {
  check_dims(I, J, K);
  if (static_cast<Index>(values.size()) != I * J * K)
    throw std::invalid_argument("DenseTensor3: value count does not match I*J*K");
  for (double x : values)
    if (!std::isfinite(x))
      throw std::invalid_argument("DenseTensor3: non-finite value");
  dims_[0] = I;
  dims_[1] = J;
  dims_[2] = K;
  v_ = std::move(values);
}

Index DenseTensor3::dim(int mode) const {
  if (mode < 0 || mode > 2) throw std::invalid_argument("DenseTensor3::dim: mode not in {0,1,2}");
  return dims_[mode];
}

Matrix frontal_slice(const DenseTensor3& T, Index k) {
  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  if (k < 0 || k >= K) throw std::out_of_range("frontal_slice: slice index out of range");
  return RowMajorMap(T.data() + k * I * J, I, J);
}

Matrix unfold(const DenseTensor3& T, int mode) {
  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  switch (mode) {
    case 1: {
      Matrix X(I, J * K);
      for (Index k = 0; k < K; ++k)
        X.block(0, k * J, I, J) = RowMajorMap(T.data() + k * I * J, I, J);
      return X;
    }
    case 2: {
      Matrix X(J, I * K);
      for (Index k = 0; k < K; ++k)
        X.block(0, k * I, J, I) = RowMajorMap(T.data() + k * I * J, I, J).transpose();
      return X;
    }
    case 3: {
      // Row k is slice k flattened in storage order.
      Matrix X(K, I * J);
      for (Index k = 0; k < K; ++k)
        X.row(k) = Eigen::Map<const Eigen::RowVectorXd>(T.data() + k * I * J, I * J);
      return X;
    }
    default:
      throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
  }
}

Matrix khatri_rao(const Matrix& U, const Matrix& V) {
  if (U.cols() != V.cols()) throw std::invalid_argument("khatri_rao: rank mismatch");
  const Index m = U.rows(), n = V.rows(), R = U.cols();
  Matrix W(m * n, R);
  for (Index r = 0; r < R; ++r)
    for (Index i = 0; i < m; ++i) W.col(r).segment(i * n, n) = U(i, r) * V.col(r);
  return W;
}

DenseTensor3 reconstruct_cp(const Matrix& A, const Matrix& B, const Matrix& C) {
  if (A.cols() != B.cols() || A.cols() != C.cols())
    throw std::invalid_argument("reconstruct_cp: rank mismatch");
  const Index I = A.rows(), J = B.rows(), K = C.rows();
  DenseTensor3 T(I, J, K);
  Matrix scaled(I, A.cols());
  for (Index k = 0; k < K; ++k) {
    scaled.noalias() = A * C.row(k).asDiagonal();
    RowMajorMutMap(T.data() + k * I * J, I, J).noalias() = scaled * B.transpose();
  }
  return T;
}

DenseTensor3 reconstruct_parafac2(const Matrix& A, const std::vector<Matrix>& Bk,
                                  const Matrix& C) {
  if (static_cast<Index>(Bk.size()) != C.rows())
    throw std::invalid_argument("reconstruct_parafac2: Bk count must equal rows of C");
  if (Bk.empty()) throw std::invalid_argument("reconstruct_parafac2: empty Bk list");
  const Index I = A.rows(), J = Bk.front().rows(), K = C.rows();
  for (const Matrix& B : Bk)
    if (B.rows() != J || B.cols() != A.cols())
      throw std::invalid_argument("reconstruct_parafac2: inconsistent Bk shapes");
  if (A.cols() != C.cols())
    throw std::invalid_argument("reconstruct_parafac2: rank mismatch");
  DenseTensor3 T(I, J, K);
  Matrix scaled(I, A.cols());
  for (Index k = 0; k < K; ++k) {
    scaled.noalias() = A * C.row(k).asDiagonal();
    RowMajorMutMap(T.data() + k * I * J, I, J).noalias() = scaled * Bk[k].transpose();
  }
  return T;
}

double frobenius_norm_sq(const DenseTensor3& T) {
  return detail::sum_squares(T.data(), T.size());
}

double frobenius_norm(const DenseTensor3& T) { return std::sqrt(frobenius_norm_sq(T)); }

}  // namespace dynten
