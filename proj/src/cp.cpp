#include "dynten/cp.hpp"

#include <chrono>
#include <cmath>

#include "dynten/numerics.hpp"

namespace dynten {

namespace {

void validate_options(const FitOptions& opts) {
  if (opts.rank < 1) throw std::invalid_argument("FitOptions: rank must be >= 1");
  if (opts.tolerance <= 0.0) throw std::invalid_argument("FitOptions: tolerance must be > 0");
  if (opts.n_starts < 1) throw std::invalid_argument("FitOptions: n_starts must be >= 1");
  if (opts.max_iterations < 1)
    throw std::invalid_argument("FitOptions: max_iterations must be >= 1");
}

// Exact squared residual ||X - [[A,B,C]]||_F^2 via the mode-1 unfolding.
double cp_loss(const Matrix& X1, const Matrix& A, const Matrix& B, const Matrix& C) {
  const Matrix R = X1 - A * khatri_rao(C, B).transpose();
  return detail::sum_squares(R);
}

void normalize_cp(CpModel& m) {
  for (Index r = 0; r < m.A.cols(); ++r) {
    const double na = m.A.col(r).norm();
    const double nb = m.B.col(r).norm();
    if (na > 0.0) m.A.col(r) /= na;
    if (nb > 0.0) m.B.col(r) /= nb;
    m.C.col(r) *= na * nb;
    if (m.C.col(r).sum() < 0.0) {
      m.C.col(r) = -m.C.col(r);
      m.B.col(r) = -m.B.col(r);
    }
  }
}

}  // namespace

Matrix cp_mode_update(const Matrix& unfolding, const Matrix& kr) {
  if (unfolding.cols() != kr.rows())
    throw std::invalid_argument("cp_mode_update: non-conformable dimensions");
  // Normal-equations form: factor = (unfolding * kr) * pinv(kr^T kr).
  // The Gram is R x R, so the pseudo-inverse (rank-revealing, symmetric)
  // costs nothing next to the MTTKRP product.
  const Matrix mttkrp = unfolding * kr;
  const Matrix gram = kr.transpose() * kr;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success)
    throw numeric_error("cp_mode_update: eigensolver failed on the Gram matrix");
  const Vector& ev = eig.eigenvalues();
  const double cutoff = ev.cwiseAbs().maxCoeff() *
                        static_cast<double>(kr.rows()) *
                        std::numeric_limits<double>::epsilon();
  Vector inv = Vector::Zero(ev.size());
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) inv(i) = 1.0 / ev(i);
  return mttkrp * (eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose());
}

std::pair<CpModel, FitReport> cp_als(const DenseTensor3& T, const FitOptions& opts,
                                     std::vector<CpStartResult>* all_starts) {
  validate_options(opts);
  const double norm_sq = frobenius_norm_sq(T);
  if (norm_sq == 0.0) throw std::invalid_argument("cp_als: tensor is identically zero");

  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  const Matrix X1 = unfold(T, 1);
  const Matrix X2 = unfold(T, 2);
  const Matrix X3 = unfold(T, 3);

  CpModel best;
  FitReport best_report;
  double best_loss = std::numeric_limits<double>::infinity();
  if (all_starts) all_starts->clear();

  // Start 0 is data-driven (leading eigenvectors of the unfolding Grams,
  // the usual HOSVD-style CP init); remaining starts are Gaussian. The
  // eigen start is skipped for extents too large to form a Gram.
  constexpr Index kEigenInitLimit = 2048;
  const bool eigen_start = std::max({I, J, K}) <= kEigenInitLimit;

  for (int s = 0; s < opts.n_starts; ++s) {
    const std::uint64_t seed = derive_seed(opts.seed, static_cast<std::uint64_t>(s));
    const auto t0 = std::chrono::steady_clock::now();
    SeededRng rng(seed);
    CpModel m;
    if (s == 0 && eigen_start) {
      m.A = leading_eigenvectors(X1 * X1.transpose(), opts.rank, derive_seed(seed, 1));
      m.B = leading_eigenvectors(X2 * X2.transpose(), opts.rank, derive_seed(seed, 2));
      m.C = leading_eigenvectors(X3 * X3.transpose(), opts.rank, derive_seed(seed, 3));
    } else {
      m.A = rng.gaussian_matrix(I, opts.rank);
      m.B = rng.gaussian_matrix(J, opts.rank);
      m.C = rng.gaussian_matrix(K, opts.rank);
    }

    FitReport rep;
    rep.seed = seed;
    double loss = cp_loss(X1, m.A, m.B, m.C);
    rep.loss_trace.push_back(loss);
    for (int it = 0; it < opts.max_iterations; ++it) {
      m.A = cp_mode_update(X1, khatri_rao(m.C, m.B));
      m.B = cp_mode_update(X2, khatri_rao(m.C, m.A));
      m.C = cp_mode_update(X3, khatri_rao(m.A, m.B));
      const double prev = loss;
      loss = cp_loss(X1, m.A, m.B, m.C);
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
    normalize_cp(m);

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
