#include "dynten/parafac2.hpp"

#include <chrono>
#include <cmath>

#include "dynten/numerics.hpp"

namespace dynten {

std::vector<Matrix> Parafac2Model::B() const {
  std::vector<Matrix> Bk;
  Bk.reserve(P.size());
  for (const Matrix& Pk : P) Bk.push_back(Pk * H);
  return Bk;
}

std::vector<Matrix> update_projections(const std::vector<Matrix>& slices, const Matrix& A,
                                       const Matrix& H, const Matrix& C) {
  const Index K = static_cast<Index>(slices.size());
  if (K != C.rows()) throw std::invalid_argument("update_projections: slice count != rows of C");
  if (A.cols() != H.rows() || H.rows() != H.cols() || A.cols() != C.cols())
    throw std::invalid_argument("update_projections: non-conformable factors");
  std::vector<Matrix> P;
  P.reserve(slices.size());
  Matrix target(A.rows(), A.cols());
  for (Index k = 0; k < K; ++k) {
    if (slices[k].rows() != A.rows())
      throw std::invalid_argument("update_projections: slice rows != rows of A");
    target.noalias() = A * C.row(k).asDiagonal() * H.transpose();
    P.push_back(orthogonal_procrustes(slices[k].transpose() * target));
  }
  return P;
}

DenseTensor3 project_slices(const std::vector<Matrix>& slices, const std::vector<Matrix>& P) {
  if (slices.size() != P.size() || slices.empty())
    throw std::invalid_argument("project_slices: length mismatch");
  const Index I = slices.front().rows(), R = P.front().cols();
  const Index K = static_cast<Index>(slices.size());
  DenseTensor3 Y(I, R, K);
  for (Index k = 0; k < K; ++k) {
    if (slices[k].rows() != I || slices[k].cols() != P[k].rows() || P[k].cols() != R)
      throw std::invalid_argument("project_slices: non-conformable slice/projection");
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        Y.data() + k * I * R, I, R)
        .noalias() = slices[k] * P[k];
  }
  return Y;
}

double pf2_constraint_gap(const std::vector<Matrix>& Bk) {
  if (Bk.empty()) throw std::invalid_argument("pf2_constraint_gap: empty list");
  const Index K = static_cast<Index>(Bk.size());
  std::vector<Matrix> grams;
  grams.reserve(Bk.size());
  double mean_norm = 0.0;
  for (const Matrix& B : Bk) {
    if (B.rows() != Bk.front().rows() || B.cols() != Bk.front().cols())
      throw std::invalid_argument("pf2_constraint_gap: unequal shapes");
    grams.push_back(B.transpose() * B);
    mean_norm += grams.back().norm();
  }
  mean_norm /= static_cast<double>(K);
  if (mean_norm <= 0.0) return 0.0;
  double worst = 0.0;
  for (Index a = 0; a < K; ++a)
    for (Index b = a + 1; b < K; ++b)
      worst = std::max(worst, (grams[a] - grams[b]).norm());
  return worst / mean_norm;
}

namespace {

double pf2_loss(const std::vector<Matrix>& slices, const Parafac2Model& m) {
  double loss = 0.0;
  double comp = 0.0;
  Matrix resid;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    resid = slices[k] - m.A * m.C.row(static_cast<Index>(k)).asDiagonal() *
                            (m.P[k] * m.H).transpose();
    // Kahan across slices as well, same compensation stream.
    const double* p = resid.data();
    for (Index i = 0; i < resid.size(); ++i) {
      const double term = p[i] * p[i] - comp;
      const double t = loss + term;
      comp = (t - loss) - term;
      loss = t;
    }
  }
  return loss;
}

// C block when non-negativity is requested: row k of C solves
// min_{c >= 0} ||vec(Y_k) - khatri_rao(H, A) c||_2 exactly.
void update_C_nnls(const DenseTensor3& Y, const Matrix& A, const Matrix& H, Matrix& C) {
  const Matrix design = khatri_rao(H, A);
  const Index I = Y.dim(0), R = Y.dim(1), K = Y.dim(2);
  Vector yk(I * R);
  for (Index k = 0; k < K; ++k) {
    const Matrix Yk = frontal_slice(Y, k);
    for (Index s = 0; s < R; ++s) yk.segment(s * I, I) = Yk.col(s);  // column-major vec
    C.row(k) = nnls(design, yk).transpose();
  }
}

void normalize_pf2(Parafac2Model& m, bool nonneg_C) {
  for (Index r = 0; r < m.A.cols(); ++r) {
    const double na = m.A.col(r).norm();
    // Column norms of every implied B_k equal the norm of H's column.
    const double nh = m.H.col(r).norm();
    if (na > 0.0) m.A.col(r) /= na;
    if (nh > 0.0) m.H.col(r) /= nh;
    m.C.col(r) *= na * nh;
    if (!nonneg_C && m.C.col(r).sum() < 0.0) {
      m.C.col(r) = -m.C.col(r);
      m.H.col(r) = -m.H.col(r);
    }
  }
}

}  // namespace

std::pair<Parafac2Model, FitReport> pf2_als(const DenseTensor3& T, const FitOptions& opts,
                                            bool nonneg_C,
                                            std::vector<Pf2StartResult>* all_starts) {
  if (opts.rank < 1) throw std::invalid_argument("FitOptions: rank must be >= 1");
  if (opts.tolerance <= 0.0) throw std::invalid_argument("FitOptions: tolerance must be > 0");
  if (opts.n_starts < 1) throw std::invalid_argument("FitOptions: n_starts must be >= 1");
  if (opts.max_iterations < 1)
    throw std::invalid_argument("FitOptions: max_iterations must be >= 1");
  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  if (opts.rank > J) throw std::invalid_argument("pf2_als: rank exceeds second-mode extent");
  const double norm_sq = frobenius_norm_sq(T);
  if (norm_sq == 0.0) throw std::invalid_argument("pf2_als: tensor is identically zero");

  std::vector<Matrix> slices;
  slices.reserve(static_cast<std::size_t>(K));
  for (Index k = 0; k < K; ++k) slices.push_back(frontal_slice(T, k));

  Parafac2Model best;
  FitReport best_report;
  double best_loss = std::numeric_limits<double>::infinity();
  if (all_starts) all_starts->clear();

  // Start 0 is data-driven: A from the leading eigenvectors of
  // sum_k X_k X_k^T with H = I and C = 1, the classic direct-fitting
  // init; remaining starts are Gaussian.
  constexpr Index kEigenInitLimit = 2048;
  const bool eigen_start = I <= kEigenInitLimit;

  for (int s = 0; s < opts.n_starts; ++s) {
    const std::uint64_t seed = derive_seed(opts.seed, static_cast<std::uint64_t>(s));
    const auto t0 = std::chrono::steady_clock::now();
    SeededRng rng(seed);
    Parafac2Model m;
    if (s == 0 && eigen_start) {
      Matrix S = Matrix::Zero(I, I);
      for (const Matrix& X : slices) S.noalias() += X * X.transpose();
      m.A = leading_eigenvectors(S, opts.rank, derive_seed(seed, 1));
      m.H = Matrix::Identity(opts.rank, opts.rank);
      m.C = Matrix::Ones(K, opts.rank);
    } else {
      m.A = rng.gaussian_matrix(I, opts.rank);
      m.H = rng.gaussian_matrix(opts.rank, opts.rank);
      m.C = rng.gaussian_matrix(K, opts.rank);
    }
    m.P = update_projections(slices, m.A, m.H, m.C);

    FitReport rep;
    rep.seed = seed;
    double loss = pf2_loss(slices, m);
    rep.loss_trace.push_back(loss);
    for (int it = 0; it < opts.max_iterations; ++it) {
      m.P = update_projections(slices, m.A, m.H, m.C);
      const DenseTensor3 Y = project_slices(slices, m.P);
      const Matrix Y1 = unfold(Y, 1);
      const Matrix Y2 = unfold(Y, 2);
      m.A = cp_mode_update(Y1, khatri_rao(m.C, m.H));
      m.H = cp_mode_update(Y2, khatri_rao(m.C, m.A));
      if (nonneg_C) {
        update_C_nnls(Y, m.A, m.H, m.C);
      } else {
        m.C = cp_mode_update(unfold(Y, 3), khatri_rao(m.A, m.H));
      }
      const double prev = loss;
      loss = pf2_loss(slices, m);
      rep.loss_trace.push_back(loss);
      rep.iterations = it + 1;
      if ((prev - loss) < opts.tolerance * std::max(prev, 1e-300)) {
        rep.converged = true;
        break;
      }
    }
    rep.fit = 100.0 * (1.0 - loss / norm_sq);
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    normalize_pf2(m, nonneg_C);

    if (all_starts) all_starts->push_back({m, rep});
    if (loss < best_loss) {
      best_loss = loss;
      best = std::move(m);
      best_report = std::move(rep);
    }
  }
  return {std::move(best), std::move(best_report)};
}

}  // namespace dynten
