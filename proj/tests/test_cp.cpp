#include <doctest.h>

#include "dynten/cp.hpp"
#include "dynten/metrics.hpp"
#include "dynten/numerics.hpp"

using namespace dynten;

namespace {

void check_trace_monotone(const std::vector<double>& trace, double slack = 1e-10) {
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + slack);
}

}  // namespace

TEST_CASE("cp_mode_update") {
  // orthonormal kr: factor = unfolding * kr
  const Matrix Q = orthogonal_procrustes(random_gaussian_matrix(6, 3, 1));
  const Matrix U = random_gaussian_matrix(4, 6, 2);
  CHECK((cp_mode_update(U, Q) - U * Q).norm() < 1e-10);

  // zero unfolding -> zero factor
  CHECK(cp_mode_update(Matrix::Zero(4, 6), random_gaussian_matrix(6, 2, 3)).isZero(1e-15));

  // exact-model unfolding: block update leaves zero residual
  const Matrix A = random_gaussian_matrix(5, 2, 4);
  const Matrix kr = random_gaussian_matrix(12, 2, 5);
  const Matrix X1 = A * kr.transpose();
  const Matrix Anew = cp_mode_update(X1, kr);
  CHECK((X1 - Anew * kr.transpose()).norm() < 1e-10 * X1.norm());
}

TEST_CASE("cp_als validates input") {
  FitOptions opts;
  opts.rank = 2;
  opts.n_starts = 1;
  CHECK_THROWS_AS(cp_als(DenseTensor3(3, 3, 3), opts), std::invalid_argument);

  const DenseTensor3 T(2, 2, 2, {1, 0, 0, 0, 0, 0, 0, 1});
  FitOptions bad = opts;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(cp_als(T, bad), std::invalid_argument);
  bad = opts;
  bad.n_starts = 0;
  CHECK_THROWS_AS(cp_als(T, bad), std::invalid_argument);
  bad = opts;
  bad.rank = 0;
  CHECK_THROWS_AS(cp_als(T, bad), std::invalid_argument);
}

TEST_CASE("cp_als recovers exact rank-3 factors") {
  // [DERIVED] oracle: build a tensor from known well-conditioned factors,
  // refit, and compare via FMS after matching.
  SeededRng rng(2024);
  const Matrix A = rng.gaussian_matrix(10, 3), B = rng.gaussian_matrix(10, 3),
               C = rng.gaussian_matrix(10, 3);
  const DenseTensor3 T = reconstruct_cp(A, B, C);

  FitOptions opts;
  opts.rank = 3;
  opts.n_starts = 5;
  opts.seed = 7;
  opts.tolerance = 1e-10;
  auto [model, report] = cp_als(T, opts);

  CHECK(report.fit > 99.99);
  const auto matching = match_components({A, B, C}, {model.A, model.B, model.C});
  CHECK(fms(A, model.A, matching) >= 0.999);
  CHECK(fms(B, model.B, matching) >= 0.999);
  CHECK(fms(C, model.C, matching) >= 0.999);
  check_trace_monotone(report.loss_trace);
}

TEST_CASE("cp_als conventions and determinism") {
  SeededRng rng(5);
  const DenseTensor3 T =
      reconstruct_cp(rng.gaussian_matrix(6, 2), rng.gaussian_matrix(7, 2),
                     rng.gaussian_matrix(8, 2));
  FitOptions opts;
  opts.rank = 2;
  opts.n_starts = 3;
  opts.seed = 11;

  std::vector<CpStartResult> starts;
  auto [model, report] = cp_als(T, opts, &starts);
  REQUIRE(starts.size() == 3);

  // best-of-starts: returned fit >= every discarded start
  for (const auto& s : starts) CHECK(report.fit >= s.report.fit - 1e-12);
  for (const auto& s : starts) check_trace_monotone(s.report.loss_trace);

  // normalization: unit columns in A and B, nonnegative column sums in C
  for (Index r = 0; r < 2; ++r) {
    CHECK(model.A.col(r).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(model.B.col(r).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(model.C.col(r).sum() >= 0.0);
  }

  // identical seeds -> identical model (FMS 1 up to permutation is the
  // spec floor; bitwise equality is what the implementation provides)
  auto [model2, report2] = cp_als(T, opts);
  CHECK(model.A == model2.A);
  CHECK(model.B == model2.B);
  CHECK(model.C == model2.C);
  CHECK(report.fit == report2.fit);
}

TEST_CASE("cp_als loss trace is the exact squared residual") {
  SeededRng rng(31);
  const DenseTensor3 T =
      reconstruct_cp(rng.gaussian_matrix(5, 2), rng.gaussian_matrix(6, 2),
                     rng.gaussian_matrix(4, 2));
  FitOptions opts;
  opts.rank = 2;
  opts.n_starts = 1;
  opts.seed = 3;
  auto [model, report] = cp_als(T, opts);
  const DenseTensor3 rec = reconstruct_cp(model.A, model.B, model.C);
  std::vector<double> diff(T.values());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= rec.values()[i];
  const double resid =
      detail::sum_squares(diff.data(), static_cast<std::ptrdiff_t>(diff.size()));
  CHECK(std::abs(report.loss_trace.back() - resid) <= 1e-8 * frobenius_norm_sq(T));
}
