#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccd/numerics.hpp"
#include "ccd/signals.hpp"

namespace ccd::sampling {

struct DecimationConfig {
    std::size_t k = 1;  ///< downsampling factor f_original / f_new
    bool anti_alias = false;
    std::size_t phase = 0;  ///< first kept index, in [0, k)
};

/// Keep samples phase, phase + k, phase + 2k, ...; the sampling period is
/// multiplied by k. With anti_alias on (and k > 1) a zero-phase low-pass
/// with cutoff π/k is applied first.
[[nodiscard]] signals::SignalSet downsample(const signals::SignalSet& s, const DecimationConfig& cfg);

/// Number of samples kept by downsample() for a length-T series.
[[nodiscard]] std::size_t decimated_length(std::size_t T, std::size_t k, std::size_t phase = 0);

/// Hamming-windowed sinc low-pass of length 8k+1, cutoff π/k, unit DC gain.
[[nodiscard]] std::vector<double> design_antialias_fir(std::size_t k);

/// Forward-backward (zero-phase) FIR filtering with reflect padding by the
/// filter half-length.
[[nodiscard]] std::vector<double> filtfilt(std::span<const double> taps, std::span<const double> x);

/// Lagged regressors for one target series.
///
/// Row t holds the target x_{target, t+Q} and regressors x_{i, t+Q-q}.
/// Columns: intercept first, then for each regressor series (in the order
/// given) lag 0 if requested, then lags 1..Q.
struct Embedding {
    numerics::DesignMatrix matrix;
    std::vector<double> target;
    std::size_t Q = 0;
};

[[nodiscard]] Embedding lag_embed(const signals::SignalSet& s, std::size_t target_series, std::size_t Q,
                                  std::span<const std::size_t> regressor_series,
                                  bool include_contemporaneous = false);

/// Same construction for raw spans (series indices refer to `series`).
[[nodiscard]] Embedding lag_embed(std::span<const std::span<const double>> series, std::size_t target_series,
                                  std::size_t Q, std::span<const std::size_t> regressor_series,
                                  bool include_contemporaneous = false);

}  // namespace ccd::sampling
