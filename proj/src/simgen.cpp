#include "dynten/simgen.hpp"

#include <cmath>
#include <numeric>

#include "dynten/numerics.hpp"

namespace dynten {

std::pair<Matrix, std::vector<int>> gen_A_clustered(Index I, Index R,
                                                    const std::vector<Index>& cluster_sizes,
                                                    double offset, double jitter,
                                                    std::uint64_t seed) {
  if (cluster_sizes.empty()) throw std::invalid_argument("gen_A_clustered: no clusters");
  for (Index sz : cluster_sizes)
    if (sz < 1) throw std::invalid_argument("gen_A_clustered: empty cluster");
  const Index total = std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), Index{0});
  if (total != I) throw std::invalid_argument("gen_A_clustered: cluster sizes must sum to I");

  // Cluster means are points on a circle of radius `offset`: component r
  // uses angle theta_r (never a right angle, so every component separates
  // the clusters) and cluster g sits at sin(theta) + sep_g * cos(theta)
  // with sep spread over [-1, 1]. Spreading the angles keeps the true
  // factor columns far from collinear, which the fitters need at rank 4.
  const double G = static_cast<double>(cluster_sizes.size());
  SeededRng rng(seed);
  Matrix A(I, R);
  std::vector<int> labels(static_cast<std::size_t>(I));
  Index row = 0;
  for (std::size_t g = 0; g < cluster_sizes.size(); ++g) {
    const double sep = G > 1 ? 2.0 * static_cast<double>(g) / (G - 1.0) - 1.0 : 0.0;
    for (Index n = 0; n < cluster_sizes[g]; ++n, ++row) {
      labels[static_cast<std::size_t>(row)] = static_cast<int>(g);
      for (Index r = 0; r < R; ++r) {
        const double theta = M_PI * static_cast<double>(2 * r + 1) /
                             static_cast<double>(2 * R + 1);
        const double mean = offset * (std::sin(theta) + sep * std::cos(theta));
        A(row, r) = mean + jitter * rng.gaussian();
      }
    }
  }
  return {std::move(A), std::move(labels)};
}

std::vector<Matrix> gen_B_random_constrained(Index J, Index R, Index K, std::uint64_t seed) {
  if (R > J) throw std::invalid_argument("gen_B_random_constrained: R must be <= J");
  SeededRng rng(seed);
  const Matrix H = rng.gaussian_matrix(R, R);
  std::vector<Matrix> Bk;
  Bk.reserve(static_cast<std::size_t>(K));
  for (Index k = 0; k < K; ++k) {
    const Matrix G = rng.gaussian_matrix(J, R);
    Eigen::HouseholderQR<Matrix> qr(G);
    const Matrix Pk = qr.householderQ() * Matrix::Identity(J, R);
    Bk.push_back(Pk * H);
  }
  return Bk;
}

namespace {

struct BlockTrack {
  Index start0;
  Index width0;
  Index shift;  // per window
  Index grow;   // per window (negative: shrink)
};

}  // namespace

std::vector<Matrix> gen_B_network(Index J, Index R, Index K, std::uint64_t seed,
                                  const NetworkParams& params) {
  if (R != 4) throw std::invalid_argument("gen_B_network: R must be 4 (one column per kind)");
  if (K < 1) throw std::invalid_argument("gen_B_network: K must be >= 1");
  const Index w0 = params.base_width;
  const Index grow = params.grow_per_window;
  const Index shift = params.shift_per_window > 0
                          ? params.shift_per_window
                          : (J + 2 * K - 1) / (2 * K);  // ceil(J / 2K)
  // Column order: shifting, growing, shrinking, shifting-and-growing.
  // The shrinking column starts wide and ends at the base width.
  const BlockTrack tracks[4] = {
      {0, w0, shift, 0},
      {J - w0, w0, -grow, grow},  // grows leftward, right edge fixed at J
      {J * 3 / 10, w0 + (K - 1) * grow, 0, -grow},
      {J / 10, w0, shift, grow},
  };
  for (const BlockTrack& t : tracks)
    for (Index k = 0; k < K; ++k) {
      const Index start = t.start0 + k * t.shift;
      const Index width = t.width0 + k * t.grow;
      if (width < 1 || start < 0 || start + width > J)
        throw std::invalid_argument("gen_B_network: block parameters exceed J");
    }

  SeededRng rng(seed);
  std::vector<Matrix> Bk;
  Bk.reserve(static_cast<std::size_t>(K));
  for (Index k = 0; k < K; ++k) {
    Matrix B = Matrix::Zero(J, R);
    for (Index r = 0; r < R; ++r) {
      const BlockTrack& t = tracks[r];
      const Index start = t.start0 + k * t.shift;
      const Index width = t.width0 + k * t.grow;
      for (Index j = start; j < start + width; ++j)
        B(j, r) = 1.0 + params.jitter * rng.gaussian();
    }
    Bk.push_back(std::move(B));
  }
  return Bk;
}

Matrix gen_C(Index K, Index R, CSetup setup, std::uint64_t seed) {
  SeededRng rng(seed);
  if (setup == CSetup::Random) return rng.uniform_matrix(K, R);
  if (R != 4) throw std::invalid_argument("gen_C: Trends setup requires R = 4");
  Matrix C(K, R);
  for (Index k = 0; k < K; ++k) C(k, 0) = rng.uniform();
  for (Index k = 0; k < K; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(K);
    C(k, 1) = 0.5 + 0.5 * std::sin(2.0 * M_PI * t);
    C(k, 2) = std::exp(3.0 * t) / std::exp(3.0);
    C(k, 3) = 1.0 / (1.0 + std::exp(-10.0 * (t - 0.5)));
  }
  return C;
}

DenseTensor3 add_noise(const DenseTensor3& T, double eta, std::uint64_t seed) {
  if (eta < 0.0) throw std::invalid_argument("add_noise: eta must be >= 0");
  if (eta == 0.0) return T;
  const double norm_T = frobenius_norm(T);
  if (norm_T == 0.0) throw std::invalid_argument("add_noise: zero tensor with eta > 0");
  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  SeededRng rng(seed);
  std::vector<double> noise(static_cast<std::size_t>(I * J * K));
  for (double& e : noise) e = rng.gaussian();
  const double norm_E = std::sqrt(detail::sum_squares(noise.data(),
                                                      static_cast<std::ptrdiff_t>(noise.size())));
  const double scale = eta * norm_T / norm_E;
  DenseTensor3 out = T;
  double* v = out.data();
  for (std::size_t i = 0; i < noise.size(); ++i) v[i] += scale * noise[i];
  return out;
}

SimDataset gen_dataset(const SimConfig& cfg) {
  SimDataset ds;
  auto [A, labels] = gen_A_clustered(cfg.I, cfg.rank, cfg.cluster_sizes, cfg.cluster_offset,
                                     cfg.cluster_jitter, derive_seed(cfg.seed, 1));
  ds.A = std::move(A);
  ds.labels = std::move(labels);
  ds.Bk = cfg.b_setup == BSetup::Random
              ? gen_B_random_constrained(cfg.J, cfg.rank, cfg.K, derive_seed(cfg.seed, 2))
              : gen_B_network(cfg.J, cfg.rank, cfg.K, derive_seed(cfg.seed, 2), cfg.network);
  ds.C = gen_C(cfg.K, cfg.rank, cfg.c_setup, derive_seed(cfg.seed, 3));
  ds.clean = reconstruct_parafac2(ds.A, ds.Bk, ds.C);
  ds.noisy = add_noise(ds.clean, cfg.noise, derive_seed(cfg.seed, 4));
  return ds;
}

}  // namespace dynten
