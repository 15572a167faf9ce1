#include "dynten/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "dynten/numerics.hpp"

namespace dynten {

double fit_score(const DenseTensor3& X, const DenseTensor3& Xhat) {
  for (int m = 0; m < 3; ++m)
    if (X.dim(m) != Xhat.dim(m)) throw std::invalid_argument("fit_score: dimension mismatch");
  const double denom = frobenius_norm_sq(X);
  if (denom == 0.0) throw std::invalid_argument("fit_score: reference tensor is zero");
  std::vector<double> diff(X.values());
  const double* b = Xhat.data();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b[i];
  const double num = detail::sum_squares(diff.data(), static_cast<std::ptrdiff_t>(diff.size()));
  return 100.0 * (1.0 - num / denom);
}

namespace detail {

std::vector<Index> max_weight_assignment(const Matrix& weights) {
  if (weights.rows() != weights.cols() || weights.rows() == 0)
    throw std::invalid_argument("max_weight_assignment: square nonempty matrix required");
  const Index n = weights.rows();
  // Hungarian algorithm with potentials on the negated weights, 1-based
  // internal indexing.
  const double INF = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> p(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    p[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, INF);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const Index i0 = p[j0];
      double delta = INF;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j)
        if (!used[j]) {
          const double cur = -weights(i0 - 1, j - 1) - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const Index j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index j = 1; j <= n; ++j) perm[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return perm;
}

}  // namespace detail

namespace {

// |U(:,i)^T V(:,j)| / (||U(:,i)|| ||V(:,j)||); zero columns give 0.
Matrix congruence_matrix(const Matrix& U, const Matrix& V) {
  Matrix C(U.cols(), V.cols());
  for (Index i = 0; i < U.cols(); ++i)
    for (Index j = 0; j < V.cols(); ++j) {
      const double nu = U.col(i).norm(), nv = V.col(j).norm();
      C(i, j) = (nu > 0.0 && nv > 0.0) ? std::abs(U.col(i).dot(V.col(j))) / (nu * nv) : 0.0;
    }
  return C;
}

}  // namespace

ComponentMatching match_components(const std::vector<Matrix>& true_factors,
                                   const std::vector<Matrix>& est_factors) {
  if (true_factors.empty() || true_factors.size() != est_factors.size())
    throw std::invalid_argument("match_components: mode count mismatch");
  const Index R = true_factors.front().cols();
  for (std::size_t m = 0; m < true_factors.size(); ++m) {
    if (true_factors[m].cols() != R || est_factors[m].cols() != R)
      throw std::invalid_argument("match_components: rank mismatch");
    if (true_factors[m].rows() != est_factors[m].rows())
      throw std::invalid_argument("match_components: row mismatch in mode " + std::to_string(m));
  }
  Matrix score = Matrix::Ones(R, R);
  for (std::size_t m = 0; m < true_factors.size(); ++m)
    score = score.cwiseProduct(congruence_matrix(true_factors[m], est_factors[m]));

  ComponentMatching matching;
  matching.perm = detail::max_weight_assignment(score);
  matching.scores.resize(R);
  for (Index r = 0; r < R; ++r) matching.scores(r) = score(r, matching.perm[r]);
  return matching;
}

double fms(const Matrix& U, const Matrix& Uhat, const ComponentMatching& matching) {
  if (U.cols() != Uhat.cols() || static_cast<Index>(matching.perm.size()) != U.cols())
    throw std::invalid_argument("fms: rank mismatch");
  if (U.rows() != Uhat.rows()) throw std::invalid_argument("fms: row mismatch");
  double total = 0.0;
  for (Index r = 0; r < U.cols(); ++r) {
    const auto u = U.col(r);
    const auto v = Uhat.col(matching.perm[r]);
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("fms: zero column");
    total += std::abs(u.dot(v)) / (nu * nv);
  }
  return total / static_cast<double>(U.cols());
}

namespace {

Matrix stack_rows(const std::vector<Matrix>& mats) {
  Index rows = 0;
  for (const Matrix& m : mats) rows += m.rows();
  Matrix out(rows, mats.front().cols());
  Index at = 0;
  for (const Matrix& m : mats) {
    out.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return out;
}

}  // namespace

double fms_evolving(const std::vector<Matrix>& Bk_true, const std::vector<Matrix>& Bk_est,
                    const ComponentMatching& matching) {
  if (Bk_true.size() != Bk_est.size() || Bk_true.empty())
    throw std::invalid_argument("fms_evolving: slice count mismatch");
  for (std::size_t k = 0; k < Bk_true.size(); ++k)
    if (Bk_true[k].rows() != Bk_est[k].rows() || Bk_true[k].cols() != Bk_est[k].cols())
      throw std::invalid_argument("fms_evolving: shape mismatch at slice " + std::to_string(k));
  return fms(stack_rows(Bk_true), stack_rows(Bk_est), matching);
}

namespace detail {

KmeansResult kmeans(const Matrix& X, int k, std::uint64_t seed, int max_iter) {
  const Index n = X.rows();
  SeededRng rng(seed);
  Matrix centers(k, X.cols());

  // k-means++ seeding.
  std::vector<double> d2(static_cast<std::size_t>(n),
                         std::numeric_limits<double>::infinity());
  Index first = static_cast<Index>(rng.uniform() * static_cast<double>(n));
  first = std::min(first, n - 1);
  centers.row(0) = X.row(first);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double d = (X.row(i) - centers.row(c - 1)).squaredNorm();
      d2[static_cast<std::size_t>(i)] = std::min(d2[static_cast<std::size_t>(i)], d);
      total += d2[static_cast<std::size_t>(i)];
    }
    Index pick = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = std::min(static_cast<Index>(rng.uniform() * static_cast<double>(n)), n - 1);
    }
    centers.row(c) = X.row(pick);
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int bestc = 0;
      double bestd = (X.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (X.row(i) - centers.row(c)).squaredNorm();
        if (d < bestd) {
          bestd = d;
          bestc = c;
        }
      }
      if (labels[static_cast<std::size_t>(i)] != bestc) {
        labels[static_cast<std::size_t>(i)] = bestc;
        changed = true;
      }
    }
    if (!changed && it > 0) break;
    Matrix sums = Matrix::Zero(k, X.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += X.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Re-seed an empty cluster at the point farthest from its center.
        Index far = 0;
        double fard = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double d = (X.row(i) - centers.row(labels[static_cast<std::size_t>(i)]))
                               .squaredNorm();
          if (d > fard) {
            fard = d;
            far = i;
          }
        }
        centers.row(c) = X.row(far);
      }
    }
  }
  double sse = 0.0;
  for (Index i = 0; i < n; ++i)
    sse += (X.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  return {std::move(labels), sse};
}

}  // namespace detail

double clustering_accuracy(const Matrix& Ahat, const std::vector<int>& labels, int n_clusters) {
  const Index n = Ahat.rows();
  if (static_cast<Index>(labels.size()) != n)
    throw std::invalid_argument("clustering_accuracy: labels length != rows");
  if (n_clusters < 1 || static_cast<Index>(n_clusters) > n)
    throw std::invalid_argument("clustering_accuracy: cluster count out of range");
  const Index R = Ahat.cols();
  if (R < 1 || R > 20) throw std::invalid_argument("clustering_accuracy: rank out of range");

  // Relabel ground truth to 0..G-1; invariant to the original label ids.
  std::map<int, int> remap;
  for (int l : labels)
    if (!remap.count(l)) {
      const int next = static_cast<int>(remap.size());
      remap[l] = next;
    }
  if (static_cast<int>(remap.size()) > n_clusters)
    throw std::invalid_argument("clustering_accuracy: more label values than clusters");
  std::vector<int> truth(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) truth[i] = remap[labels[i]];

  constexpr int kRestarts = 20;
  constexpr std::uint64_t kClusterSeedBase = 0x6b6d65616e73ull;  // fixed protocol seed

  double best_acc = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << R); ++mask) {
    Matrix sub(n, __builtin_popcount(mask));
    Index c = 0;
    for (Index r = 0; r < R; ++r)
      if (mask & (1u << r)) sub.col(c++) = Ahat.col(r);

    detail::KmeansResult best_run{{}, std::numeric_limits<double>::infinity()};
    for (int rep = 0; rep < kRestarts; ++rep) {
      auto run = detail::kmeans(sub, n_clusters,
                                derive_seed(kClusterSeedBase, mask * 64ull + rep));
      if (run.sse < best_run.sse) best_run = std::move(run);
    }

    // Exact assignment between predicted and true labels.
    Matrix confusion = Matrix::Zero(n_clusters, n_clusters);
    for (Index i = 0; i < n; ++i)
      confusion(truth[static_cast<std::size_t>(i)],
                best_run.labels[static_cast<std::size_t>(i)]) += 1.0;
    const auto perm = detail::max_weight_assignment(confusion);
    double matched = 0.0;
    for (int g = 0; g < n_clusters; ++g) matched += confusion(g, perm[static_cast<std::size_t>(g)]);
    best_acc = std::max(best_acc, matched / static_cast<double>(n));
  }
  return 100.0 * best_acc;
}

TTestResult two_sample_ttest(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t nx = x.size(), ny = y.size();
  if (nx < 2 || ny < 2) throw std::invalid_argument("two_sample_ttest: need >= 2 per sample");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(nx);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(ny);
  double ssx = 0.0, ssy = 0.0;
  for (double v : x) ssx += (v - mx) * (v - mx);
  for (double v : y) ssy += (v - my) * (v - my);
  const double df = static_cast<double>(nx + ny - 2);
  // Pooled over all observations (divisor n_x + n_y).
  const double sp2 = (ssx + ssy) / static_cast<double>(nx + ny);
  const double se = std::sqrt(sp2 * (1.0 / static_cast<double>(nx) +
                                     1.0 / static_cast<double>(ny)));
  TTestResult res{};
  if (se == 0.0) {
    if (mx == my) {
      res.t = 0.0;
      res.p = 1.0;
    } else {
      res.t = (mx > my) ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
      res.p = 0.0;
    }
    return res;
  }
  res.t = (mx - my) / se;
  boost::math::students_t dist(df);
  res.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(res.t)));
  return res;
}

UniquenessReport uniqueness_check(const std::vector<FittedRun>& runs) {
  if (runs.size() < 2) throw std::invalid_argument("uniqueness_check: need >= 2 runs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].fit > runs[best].fit) best = i;

  UniquenessReport rep;
  rep.unique = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i == best || runs[i].fit < runs[best].fit - 0.1) continue;
    ++rep.n_candidates;
    const auto matching = match_components(runs[best].factors, runs[i].factors);
    for (std::size_t m = 0; m < runs[best].factors.size(); ++m) {
      const double score = fms(runs[best].factors[m], runs[i].factors[m], matching);
      rep.min_fms = std::min(rep.min_fms, score);
      if (score < 0.99) rep.unique = false;
    }
  }
  return rep;
}

}  // namespace dynten
