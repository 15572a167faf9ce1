#include <doctest.h>

#include <cmath>

#include "dynten/falff.hpp"
#include "dynten/numerics.hpp"

using namespace dynten;

namespace {

// Sinusoid hitting DFT bin `cycles` exactly (leakage-free).
Vector tone(Index n, int cycles, double amplitude = 1.0) {
  Vector v(n);
  for (Index t = 0; t < n; ++t)
    v(t) = amplitude * std::sin(2.0 * M_PI * cycles * static_cast<double>(t) /
                                static_cast<double>(n));
  return v;
}

}  // namespace

TEST_CASE("sliding_windows") {
  Vector series(10);
  for (Index i = 0; i < 10; ++i) series(i) = static_cast<double>(i);

  WindowSpec tiling{5, 5, 0.01, 0.08};
  const auto w1 = sliding_windows(series, tiling);
  REQUIRE(w1.size() == 2);  // exact non-overlapping tiling
  CHECK(w1[0](0) == 0.0);
  CHECK(w1[1](0) == 5.0);

  WindowSpec strided{4, 3, 0.01, 0.08};
  const auto w2 = sliding_windows(series, strided);
  REQUIRE(w2.size() == 3);  // offsets 0, 3, 6
  CHECK(w2[2](0) == 6.0);

  WindowSpec too_long{11, 1, 0.01, 0.08};
  CHECK_THROWS_AS(sliding_windows(series, too_long), std::invalid_argument);
  WindowSpec no_stride{4, 0, 0.01, 0.08};
  CHECK_THROWS_AS(sliding_windows(series, no_stride), std::invalid_argument);
}

TEST_CASE("falff_window spectral ratios") {
  const Index n = 64;
  const double rate = 1.0;  // Hz; bins at m/64 Hz

  // bin 3 = 0.0469 Hz, inside [0.01, 0.08]; bin 16 = 0.25 Hz, outside
  WindowSpec spec{n, n, 0.01, 0.08};
  CHECK(falff_window(tone(n, 3), spec, rate) >= 0.99);
  CHECK(falff_window(tone(n, 16), spec, rate) <= 0.01);

  // two-tone oracle: equal amplitudes, one in and one out -> exactly 1/2
  const Vector two = tone(n, 3) + tone(n, 16);
  CHECK(std::abs(falff_window(two, spec, rate) - 0.5) <= 1e-10);

  // scale invariance
  CHECK(falff_window(10.0 * two, spec, rate) ==
        doctest::Approx(falff_window(two, spec, rate)).epsilon(1e-12));

  // output in [0, 1]; zero signal gives 0
  CHECK(falff_window(Vector::Zero(n), spec, rate) == 0.0);
  for (std::uint64_t seed : {1u, 2u}) {
    const Vector noise = random_gaussian_matrix(n, 1, seed).col(0);
    const double v = falff_window(noise, spec, rate);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  WindowSpec bad{n, n, 0.3, 0.2};
  CHECK_THROWS_AS(falff_window(two, bad, rate), std::invalid_argument);
  WindowSpec above_nyquist{n, n, 0.01, 0.6};
  CHECK_THROWS_AS(falff_window(two, above_nyquist, rate), std::invalid_argument);
  CHECK_THROWS_AS(falff_window(tone(2, 1), spec, rate), std::invalid_argument);
}

TEST_CASE("build_falff_tensor") {
  const Index n = 32;
  Matrix one(1, n);
  one.row(0) = tone(n, 2).transpose();
  const TimeSeriesSet subject(one, 1.0);
  WindowSpec spec{n, n, 0.01, 0.08};
  const DenseTensor3 T = build_falff_tensor({subject}, spec);
  CHECK(T.dim(0) == 1);
  CHECK(T.dim(1) == 1);
  CHECK(T.dim(2) == 1);

  // constant-zero series: all-zero features
  const TimeSeriesSet zero(Matrix::Zero(2, n), 1.0);
  WindowSpec half{16, 16, 0.01, 0.08};
  const DenseTensor3 Z = build_falff_tensor({zero}, half);
  CHECK(frobenius_norm(Z) == 0.0);

  // ragged inputs rejected
  const TimeSeriesSet other(Matrix::Zero(3, n), 1.0);
  CHECK_THROWS_AS(build_falff_tensor({zero, other}, half), std::invalid_argument);
}

TEST_CASE("preprocess_tensor") {
  // hand-computed fiber: [1,2,3] -> [-1,0,1]/sqrt(2)
  DenseTensor3 T(1, 3, 1);
  T(0, 0, 0) = 1.0;
  T(0, 1, 0) = 2.0;
  T(0, 2, 0) = 3.0;
  const DenseTensor3 P = preprocess_tensor(T);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(P(0, 0, 0) == doctest::Approx(-s).epsilon(1e-14));
  CHECK(P(0, 1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(P(0, 2, 0) == doctest::Approx(s).epsilon(1e-14));

  // idempotent: second application changes nothing (within 1e-12)
  SeededRng rng(9);
  DenseTensor3 R(4, 6, 3);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 6; ++j)
      for (Index k = 0; k < 3; ++k) R(i, j, k) = rng.gaussian();
  const DenseTensor3 once = preprocess_tensor(R);
  const DenseTensor3 twice = preprocess_tensor(once);
  for (Index i = 0; i < R.size(); ++i)
    CHECK(std::abs(once.values()[i] - twice.values()[i]) <= 1e-12);

  // every output fiber is zero-mean unit-norm
  for (Index i = 0; i < 4; ++i)
    for (Index k = 0; k < 3; ++k) {
      double mean = 0.0, norm2 = 0.0;
      for (Index j = 0; j < 6; ++j) mean += once(i, j, k);
      for (Index j = 0; j < 6; ++j) norm2 += once(i, j, k) * once(i, j, k);
      CHECK(std::abs(mean / 6.0) <= 1e-12);
      CHECK(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12);
    }

  // constant fiber: error naming the fiber
  DenseTensor3 C(2, 3, 2);
  for (Index j = 0; j < 3; ++j) C(1, j, 1) = 4.2;
  C(0, 0, 0) = 1.0;  // make other fibers non-constant
  C(0, 0, 1) = 1.0;
  C(1, 0, 0) = 1.0;
  try {
    preprocess_tensor(C);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("subject") != std::string::npos);
  }
}
