#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ccd/graphs.hpp"

namespace ccd::signals {

/// Recipe for the bivariate simulation: a smooth AR source x, an FIR
/// coupling into y, and AR noise mixed into y at a fixed variance fraction.
struct DgpSpec {
    std::vector<double> source_ar{1.6, -0.64};
    double innovation_std = 1.0;
    std::vector<double> coupling_taps;  ///< empty = independent scenario
    std::vector<double> noise_ar{0.9};
    double snr_ratio = 0.8;
    std::size_t n_samples = 20000;
    std::size_t burn_in = 1000;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

/// The default coupled setup: delay-50 five-tap coupling, 80/20 SNR, T = 20000.
[[nodiscard]] DgpSpec default_coupled_spec();
/// Same process with the coupling removed.
[[nodiscard]] DgpSpec default_independent_spec();

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// D time series of common length T on a common sampling period.
class SignalSet {
public:
    SignalSet(RowMatrix data, double sampling_period, std::vector<std::string> labels);
    SignalSet(const std::vector<std::vector<double>>& series, double sampling_period,
              std::vector<std::string> labels);

    [[nodiscard]] std::size_t dims() const noexcept { return static_cast<std::size_t>(data_.rows()); }
    [[nodiscard]] std::size_t length() const noexcept { return static_cast<std::size_t>(data_.cols()); }
    [[nodiscard]] double sampling_period() const noexcept { return sampling_period_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const RowMatrix& data() const noexcept { return data_; }
    [[nodiscard]] std::span<const double> series(std::size_t i) const;

    friend bool operator==(const SignalSet&, const SignalSet&) = default;

private:
    RowMatrix data_;
    double sampling_period_;
    std::vector<std::string> labels_;
};

struct GroundTruth {
    graphs::SummaryGraph summary{2};
    graphs::WindowGraph window{2, 1};
    double effective_delay = 0.0;  ///< group delay of the coupling taps, base samples
};

/// True iff every root of z^p - c_1 z^{p-1} - ... - c_p lies strictly inside the unit circle.
[[nodiscard]] bool is_stable_ar(std::span<const double> coeffs);

/// AR realization x_t = Σ c_m x_{t-m} + σ w_t with burn_in samples discarded.
[[nodiscard]] std::vector<double> gen_ar(std::span<const double> coeffs, double innovation_std,
                                         std::size_t T, std::size_t burn_in, std::uint64_t seed);

/// Symmetric triangular FIR centred on index `delay`, unit DC gain.
/// half_width = 0 gives a pure delay.
[[nodiscard]] std::vector<double> design_delay_fir(std::size_t delay, std::size_t half_width);

/// Σ n·h[n] / Σ h[n].
[[nodiscard]] double group_delay_at_dc(std::span<const double> taps);

/// Causal FIR filtering with zero history: y[t] = Σ taps[m]·x[t-m].
[[nodiscard]] std::vector<double> fir_filter(std::span<const double> taps, std::span<const double> x);

struct SnrMix {
    std::vector<double> output;
    double signal_scale = 0.0;
    double noise_scale = 0.0;
};

/// output = a·signal + b·noise with a = sqrt(ratio) and b chosen so that the
/// realized component variances split as ratio : (1 - ratio) while the total
/// component power equals Var(signal).
[[nodiscard]] SnrMix mix_snr(std::span<const double> signal_part, std::span<const double> noise_part,
                             double ratio);

/// Simulate (x, y) and the matching ground truth.
[[nodiscard]] std::pair<SignalSet, GroundTruth> generate_pair(const DgpSpec& spec);

/// Ground truth depends only on the coupling taps, never on the seed.
[[nodiscard]] GroundTruth ground_truth_for(const DgpSpec& spec);

}  // namespace ccd::signals
