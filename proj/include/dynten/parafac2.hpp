#pragma once

#include <utility>
#include <vector>

#include "dynten/cp.hpp"

namespace dynten {

/// PARAFAC2 factors: slice k is modeled as A * diag(C.row(k)) * (P[k]*H)^T.
/// The P_k are column-orthonormal, so every implied B_k = P_k*H shares the
/// cross-product B_k^T B_k = H^T H.
struct Parafac2Model {
  Matrix A;               ///< I x R
  Matrix H;               ///< R x R common factor
  std::vector<Matrix> P;  ///< K orthonormal J x R projections
  Matrix C;               ///< K x R

  /// Derived evolving factors B_k = P_k * H.
  std::vector<Matrix> B() const;
};

struct Pf2StartResult {
  Parafac2Model model;
  FitReport report;
};

/// Procrustes step of direct fitting: each P_k maximizes
/// trace(P_k^T X_k^T A diag(c_k) H^T) over column-orthonormal P_k.
std::vector<Matrix> update_projections(const std::vector<Matrix>& slices, const Matrix& A,
                                       const Matrix& H, const Matrix& C);

/// Projected tensor Y with slices Y_k = X_k * P_k (I x R x K).
DenseTensor3 project_slices(const std::vector<Matrix>& slices, const std::vector<Matrix>& P);

/// Worst relative violation of the PARAFAC2 constraint:
/// max over pairs ||B_k1^T B_k1 - B_k2^T B_k2||_F / mean ||B_k^T B_k||_F.
double pf2_constraint_gap(const std::vector<Matrix>& Bk);

/// Direct-fitting PARAFAC2 ALS. Each sweep updates the projections, then
/// runs one CP-style pass (A, H, C) on the projected slices; with
/// `nonneg_C` the C block is solved row-wise by exact NNLS, so every entry
/// of C is nonnegative. Start handling mirrors cp_als.
std::pair<Parafac2Model, FitReport> pf2_als(const DenseTensor3& T, const FitOptions& opts,
                                            bool nonneg_C,
                                            std::vector<Pf2StartResult>* all_starts = nullptr);

}  // namespace dynten
