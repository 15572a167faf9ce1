#pragma once

#include <vector>

#include "dynten/common.hpp"

namespace dynten {

/// Dense third-order tensor of shape I x J x K.
///
/// Storage is frontal-slice-major: entry (i, j, k) lives at
/// values()[k*I*J + i*J + j], i.e. slice k is a contiguous row-major
/// I x J block. All unfolding conventions below derive from this order.
class DenseTensor3 {
 public:
  DenseTensor3() = default;

  /// Zero tensor with the given extents.
  DenseTensor3(Index I, Index J, Index K);

  /// Adopts `values` (storage order as above). Rejects count mismatch and
  /// non-finite entries.
  DenseTensor3(Index I, Index J, Index K, std::vector<double> values);

  /// Extent of mode 0, 1 or 2.
  Index dim(int mode) const;

  Index size() const { return static_cast<Index>(v_.size()); }

  double operator()(Index i, Index j, Index k) const { return v_[offset(i, j, k)]; }
  double& operator()(Index i, Index j, Index k) { return v_[offset(i, j, k)]; }

  const std::vector<double>& values() const { return v_; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

 private:
  Index offset(Index i, Index j, Index k) const { return (k * dims_[0] + i) * dims_[1] + j; }

  Index dims_[3] = {0, 0, 0};
  std::vector<double> v_;
};

/// Frontal slice X_k as an I x J matrix. Returns a copy; the tensor is not
/// aliased by the result.
Matrix frontal_slice(const DenseTensor3& T, Index k);

/// Mode-n unfolding, n in {1,2,3}. Column conventions (fixed):
///   mode 1: I x (J*K), entry (i, k*J + j)
///   mode 2: J x (I*K), entry (j, k*I + i)
///   mode 3: K x (I*J), entry (k, i*J + j)
/// With these orders, for a CP tensor [A,B,C]:
///   unfold(T,1) = A * khatri_rao(C,B)^T
///   unfold(T,2) = B * khatri_rao(C,A)^T
///   unfold(T,3) = C * khatri_rao(A,B)^T
Matrix unfold(const DenseTensor3& T, int mode);

/// Column-wise Kronecker product: column r of the result is
/// U.col(r) kron V.col(r); row index is u_row * V.rows() + v_row.
Matrix khatri_rao(const Matrix& U, const Matrix& V);

/// Tensor with slices X_k = A * diag(C.row(k)) * B^T.
DenseTensor3 reconstruct_cp(const Matrix& A, const Matrix& B, const Matrix& C);

/// Tensor with slices X_k = A * diag(C.row(k)) * Bk[k]^T. With all Bk equal
/// this reproduces reconstruct_cp bit for bit (same summation order).
DenseTensor3 reconstruct_parafac2(const Matrix& A, const std::vector<Matrix>& Bk,
                                  const Matrix& C);

double frobenius_norm(const DenseTensor3& T);

/// Squared Frobenius norm, compensated summation.
double frobenius_norm_sq(const DenseTensor3& T);

}  // namespace dynten
