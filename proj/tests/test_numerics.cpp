#include <doctest.h>

#include "dynten/numerics.hpp"

using namespace dynten;

TEST_CASE("thin_svd basics") {
  const auto id = thin_svd(Matrix::Identity(2, 2));
  CHECK(id.S(0) == doctest::Approx(1.0));
  CHECK(id.S(1) == doctest::Approx(1.0));

  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 3.0;
  const auto d = thin_svd(D);
  CHECK(d.S(0) == doctest::Approx(3.0));
  CHECK(d.S(1) == doctest::Approx(0.0));
}

TEST_CASE("thin_svd reconstruction and orthogonality") {
  for (std::uint64_t seed : {1u, 5u, 9u}) {
    const Matrix M = random_gaussian_matrix(5, 3, seed);
    const auto svd = thin_svd(M);
    CHECK(svd.U.rows() == 5);
    CHECK(svd.U.cols() == 3);
    CHECK(svd.V.rows() == 3);
    const Matrix rec = svd.U * svd.S.asDiagonal() * svd.V.transpose();
    CHECK((rec - M).norm() <= 1e-10 * M.norm());
    CHECK((svd.U.transpose() * svd.U - Matrix::Identity(3, 3)).norm() < 1e-10);
    CHECK((svd.V.transpose() * svd.V - Matrix::Identity(3, 3)).norm() < 1e-10);
    for (Index i = 1; i < svd.S.size(); ++i) CHECK(svd.S(i - 1) >= svd.S(i));
  }
}

TEST_CASE("orthogonal_procrustes") {
  CHECK((orthogonal_procrustes(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-12);

  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 5.0;
  CHECK((orthogonal_procrustes(D) - Matrix::Identity(2, 2)).norm() < 1e-12);

  Matrix F(2, 2);
  F << 0, 1, 1, 0;
  CHECK((orthogonal_procrustes(F) - F).norm() < 1e-12);

  // always column-orthonormal, maximizes trace(P^T F); degenerate inputs flagged
  for (std::uint64_t seed : {2u, 4u, 6u}) {
    const Matrix G = random_gaussian_matrix(6, 3, seed);
    bool degenerate = true;
    const Matrix P = orthogonal_procrustes(G, &degenerate);
    CHECK_FALSE(degenerate);
    CHECK((P.transpose() * P - Matrix::Identity(3, 3)).norm() < 1e-10);
    // no orthonormal Q (sampled) beats P
    const double best = (P.transpose() * G).trace();
    for (std::uint64_t s2 : {11u, 12u, 13u}) {
      const Matrix Q = orthogonal_procrustes(random_gaussian_matrix(6, 3, s2));
      CHECK((Q.transpose() * G).trace() <= best + 1e-10);
    }
  }

  bool degenerate = false;
  const Matrix P = orthogonal_procrustes(Matrix::Zero(4, 2), &degenerate);
  CHECK(degenerate);
  CHECK((P.transpose() * P - Matrix::Identity(2, 2)).norm() < 1e-10);

  CHECK_THROWS_AS(orthogonal_procrustes(Matrix::Zero(2, 4)), std::invalid_argument);
}

TEST_CASE("solve_lstsq") {
  const Matrix Y = random_gaussian_matrix(4, 2, 3);
  CHECK((solve_lstsq(Matrix::Identity(4, 4), Y) - Y).norm() < 1e-12);

  Matrix M(2, 1), y(2, 1);
  M << 1, 1;
  y << 0, 2;
  CHECK(solve_lstsq(M, y)(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

  // residual orthogonal to range(M) on an overdetermined random system
  const Matrix A = random_gaussian_matrix(10, 4, 17);
  const Matrix b = random_gaussian_matrix(10, 1, 18);
  const Matrix x = solve_lstsq(A, b);
  const Matrix r = b - A * x;
  CHECK((A.transpose() * r).norm() <= 1e-8 * A.norm() * b.norm());

  // rank-deficient: minimum-norm solution
  Matrix R(3, 2);
  R.col(0) << 1, 1, 1;
  R.col(1) << 1, 1, 1;
  const Matrix sol = solve_lstsq(R, Matrix::Ones(3, 1));
  CHECK(sol(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sol(1, 0) == doctest::Approx(0.5).epsilon(1e-10));
}

namespace {

// KKT conditions of min ||Mx - y|| s.t. x >= 0 at absolute tolerance tol.
void check_kkt(const Matrix& M, const Vector& y, const Vector& x, double tol = 1e-10) {
  REQUIRE(x.minCoeff() >= 0.0);
  const Vector grad = M.transpose() * (M * x - y);
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) > 0.0)
      CHECK(std::abs(grad(i)) <= tol);
    else
      CHECK(grad(i) >= -tol);
  }
}

}  // namespace

TEST_CASE("nnls examples") {
  Matrix I2 = Matrix::Identity(2, 2);
  Vector y(2);
  y << 1, -2;
  const Vector x = nnls(I2, y);
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x(1) == 0.0);
  check_kkt(I2, y, x);

  // y in the nonnegative cone: matches unconstrained least squares
  const Matrix M = random_gaussian_matrix(8, 3, 21);
  Vector coef(3);
  coef << 0.5, 1.5, 2.0;
  const Vector y2 = M * coef;
  CHECK((nnls(M, y2) - coef).norm() < 1e-8);

  CHECK(nnls(M, Vector::Zero(8)).isZero(0.0));
}

TEST_CASE("nnls KKT point on random problems") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Matrix M = random_gaussian_matrix(12, 5, 1000 + seed);
    const Vector y = random_gaussian_matrix(12, 1, 2000 + seed).col(0);
    const Vector x = nnls(M, y);
    check_kkt(M, y, x);
    CHECK(x.minCoeff() >= 0.0);
  }
}

TEST_CASE("seeded randomness") {
  CHECK(random_gaussian_matrix(7, 3, 42) == random_gaussian_matrix(7, 3, 42));
  CHECK(random_uniform_matrix(7, 3, 42) == random_uniform_matrix(7, 3, 42));
  CHECK(random_gaussian_matrix(7, 3, 42) != random_gaussian_matrix(7, 3, 43));

  const Matrix U = random_uniform_matrix(100, 100, 7);  // 1e4 draws
  CHECK(U.minCoeff() >= 0.0);
  CHECK(U.maxCoeff() < 1.0);
  CHECK(U.mean() == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +- 0.02

  const Matrix G = random_gaussian_matrix(100, 100, 8);
  const double var = (G.array() - G.mean()).square().sum() / (G.size() - 1.0);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));

  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
