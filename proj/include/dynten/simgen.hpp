#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dynten/tensor.hpp"

namespace dynten {

enum class BSetup { Random, Network };
enum class CSetup { Random, Trends };

/// Block parameters for the evolving-network factor columns. Widths and
/// positions are in nodes (second-mode indices); steps are per window.
struct NetworkParams {
  int base_width = 15;
  int grow_per_window = 1;   ///< growth of the growing / shifting-growing columns
  int shift_per_window = 0;  ///< 0 = derive ceil(J / (2K))
  double jitter = 0.1;       ///< Gaussian sigma on active entries
};

/// Full description of one simulated dataset family.
struct SimConfig {
  Index I = 50, J = 100, K = 25;
  Index rank = 4;
  BSetup b_setup = BSetup::Random;
  CSetup c_setup = CSetup::Random;
  double noise = 0.0;  ///< eta
  std::uint64_t seed = 0;
  std::vector<Index> cluster_sizes = {25, 25};
  double cluster_offset = 1.0;
  double cluster_jitter = 0.3;
  NetworkParams network;
};

struct SimDataset {
  DenseTensor3 noisy;
  DenseTensor3 clean;  ///< exactly reconstruct_parafac2(A, Bk, C)
  Matrix A;
  std::vector<Matrix> Bk;
  Matrix C;
  std::vector<int> labels;  ///< cluster id per subject
};

/// Subjects-mode factor with cluster structure: each row is its cluster's
/// mean row plus Gaussian jitter. Cluster means are +-offset per component
/// with alternating sign across clusters, so k-means on the true factor
/// separates the clusters perfectly at the default jitter.
std::pair<Matrix, std::vector<int>> gen_A_clustered(Index I, Index R,
                                                    const std::vector<Index>& cluster_sizes,
                                                    double offset, double jitter,
                                                    std::uint64_t seed);

/// Random evolving factors satisfying the PARAFAC2 constraint exactly:
/// B_k = P_k * H with P_k an orthonormal basis of a Gaussian draw and H a
/// fixed Gaussian R x R matrix.
std::vector<Matrix> gen_B_random_constrained(Index J, Index R, Index K, std::uint64_t seed);

/// Evolving-network factors (requires R = 4): per column one of a
/// shifting, growing, shrinking, or shifting-and-growing active block.
/// Active entries are 1 plus Gaussian jitter, inactive entries exactly 0.
/// These factors deliberately violate the PARAFAC2 constraint.
std::vector<Matrix> gen_B_network(Index J, Index R, Index K, std::uint64_t seed,
                                  const NetworkParams& params = {});

/// Time-mode factor. Random: all columns U[0,1). Trends (requires R = 4):
/// one uniform random column plus sinusoidal, exponential and sigmoidal
/// curves sampled at K equispaced points; all entries nonnegative.
Matrix gen_C(Index K, Index R, CSetup setup, std::uint64_t seed);

/// X + eta * E * ||X||_F / ||E||_F with E standard normal, so that
/// ||out - X||_F = eta * ||X||_F up to rounding.
DenseTensor3 add_noise(const DenseTensor3& T, double eta, std::uint64_t seed);

/// Composes the generators above; pure function of the config.
SimDataset gen_dataset(const SimConfig& cfg);

}  // namespace dynten
