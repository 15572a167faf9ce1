#pragma once

#include <vector>

#include "dynten/tensor.hpp"

namespace dynten {

/// Uniformly sampled multichannel time series (one row per series).
struct TimeSeriesSet {
  TimeSeriesSet(Matrix values_, double sampling_interval_);

  Index n_series() const { return values.rows(); }
  Index n_samples() const { return values.cols(); }
  double sampling_rate() const { return 1.0 / sampling_interval; }

  Matrix values;
  double sampling_interval;  ///< seconds per sample
};

struct WindowSpec {
  Index window = 0;   ///< samples per window
  Index stride = 0;   ///< samples between window starts
  double f_lo = 0.01;  ///< Hz
  double f_hi = 0.08;  ///< Hz
};

/// Windows at offsets 0, stride, 2*stride, ...;
/// count = floor((n_samples - window) / stride) + 1.
std::vector<Vector> sliding_windows(const Vector& series, const WindowSpec& spec);

/// Fractional amplitude of low-frequency fluctuations of one window:
/// the one-sided DFT magnitude spectrum is computed with the DC bin
/// excluded; the numerator sums magnitudes of bins with frequency in
/// [f_lo, f_hi] and the denominator sums all bins above DC. Returns 0
/// when the denominator is 0. The result is scale invariant and in [0,1].
double falff_window(const Vector& window, const WindowSpec& spec, double sampling_rate);

/// Tensor of shape subjects x series x windows with fALFF per entry.
DenseTensor3 build_falff_tensor(const std::vector<TimeSeriesSet>& subjects,
                                const WindowSpec& spec);

/// Centers each second-mode fiber T[i, :, k] to zero mean and scales it to
/// unit norm. Idempotent. A fiber that is constant (zero after centering)
/// raises an error naming (i, k).
DenseTensor3 preprocess_tensor(const DenseTensor3& T);

}  // namespace dynten
