#include "dynten/falff.hpp"

#include <cmath>

namespace dynten {

TimeSeriesSet::TimeSeriesSet(Matrix values_, double sampling_interval_)
    : values(std::move(values_)), sampling_interval(sampling_interval_) {
  if (values.rows() < 1 || values.cols() < 1)
    throw std::invalid_argument("TimeSeriesSet: empty series");
  if (!(sampling_interval > 0.0))
    throw std::invalid_argument("TimeSeriesSet: sampling interval must be positive");
  if (!values.allFinite()) throw std::invalid_argument("TimeSeriesSet: non-finite values");
}

std::vector<Vector> sliding_windows(const Vector& series, const WindowSpec& spec) {
  const Index n = series.size();
  if (spec.window < 1 || spec.window > n)
    throw std::invalid_argument("sliding_windows: window must be in [1, n_samples]");
  if (spec.stride < 1) throw std::invalid_argument("sliding_windows: stride must be >= 1");
  const Index count = (n - spec.window) / spec.stride + 1;
  std::vector<Vector> windows;
  windows.reserve(static_cast<std::size_t>(count));
  for (Index w = 0; w < count; ++w) windows.push_back(series.segment(w * spec.stride, spec.window));
  return windows;
}

double falff_window(const Vector& window, const WindowSpec& spec, double sampling_rate) {
  const Index n = window.size();
  if (n < 4) throw std::invalid_argument("falff_window: window length must be >= 4");
  if (!(sampling_rate > 0.0))
    throw std::invalid_argument("falff_window: sampling rate must be positive");
  const double nyquist = sampling_rate / 2.0;
  if (!(spec.f_lo >= 0.0) || !(spec.f_lo < spec.f_hi) || !(spec.f_hi <= nyquist))
    throw std::invalid_argument("falff_window: band must satisfy 0 <= f_lo < f_hi <= Nyquist");

  double num = 0.0, den = 0.0;
  for (Index m = 1; m <= n / 2; ++m) {
    double re = 0.0, im = 0.0;
    const double omega = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n);
    for (Index t = 0; t < n; ++t) {
      re += window(t) * std::cos(omega * static_cast<double>(t));
      im -= window(t) * std::sin(omega * static_cast<double>(t));
    }
    const double mag = std::hypot(re, im);
    const double freq = static_cast<double>(m) * sampling_rate / static_cast<double>(n);
    den += mag;
    if (freq >= spec.f_lo && freq <= spec.f_hi) num += mag;
  }
  return den > 0.0 ? num / den : 0.0;
}

DenseTensor3 build_falff_tensor(const std::vector<TimeSeriesSet>& subjects,
                                const WindowSpec& spec) {
  if (subjects.empty()) throw std::invalid_argument("build_falff_tensor: no subjects");
  const Index V = subjects.front().n_series();
  const Index N = subjects.front().n_samples();
  const double dt = subjects.front().sampling_interval;
  for (const TimeSeriesSet& s : subjects)
    if (s.n_series() != V || s.n_samples() != N || s.sampling_interval != dt)
      throw std::invalid_argument("build_falff_tensor: ragged subject inputs");
  if (spec.window < 1 || spec.window > N)
    throw std::invalid_argument("build_falff_tensor: window must be in [1, n_samples]");
  if (spec.stride < 1) throw std::invalid_argument("build_falff_tensor: stride must be >= 1");

  const Index W = (N - spec.window) / spec.stride + 1;
  const double rate = subjects.front().sampling_rate();
  DenseTensor3 T(static_cast<Index>(subjects.size()), V, W);
  for (std::size_t s = 0; s < subjects.size(); ++s)
    for (Index v = 0; v < V; ++v) {
      const Vector series = subjects[s].values.row(v).transpose();
      for (Index w = 0; w < W; ++w) {
        const Vector win = series.segment(w * spec.stride, spec.window);
        T(static_cast<Index>(s), v, w) = falff_window(win, spec, rate);
      }
    }
  return T;
}

DenseTensor3 preprocess_tensor(const DenseTensor3& T) {
  const Index I = T.dim(0), J = T.dim(1), K = T.dim(2);
  DenseTensor3 out(I, J, K);
  Vector fiber(J);
  for (Index i = 0; i < I; ++i)
    for (Index k = 0; k < K; ++k) {
      for (Index j = 0; j < J; ++j) fiber(j) = T(i, j, k);
      const double mean = fiber.mean();
      fiber.array() -= mean;
      const double norm = fiber.norm();
      const double floor = 1e-13 * std::max(1.0, std::abs(mean)) *
                           std::sqrt(static_cast<double>(J));
      if (norm <= floor)
        throw std::invalid_argument("preprocess_tensor: degenerate (constant) fiber at subject " +
                                    std::to_string(i) + ", window " + std::to_string(k));
      fiber /= norm;
      for (Index j = 0; j < J; ++j) out(i, j, k) = fiber(j);
    }
  return out;
}

}  // namespace dynten
