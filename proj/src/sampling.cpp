#include "ccd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ccd::sampling {

namespace {

// Whole-sample mirror about the end points (numpy "reflect"), applied
// repeatedly so any offset maps into [0, n).
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
    if (n == 1) return 0;
    const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
    std::ptrdiff_t r = i % period;
    if (r < 0) r += period;
    if (r >= static_cast<std::ptrdiff_t>(n)) r = period - r;
    return static_cast<std::size_t>(r);
}

}  // namespace

std::size_t decimated_length(std::size_t T, std::size_t k, std::size_t phase) {
    if (k == 0) throw std::invalid_argument("decimated_length: k must be positive");
    if (phase >= T) return 0;
    return (T - phase - 1) / k + 1;
}

std::vector<double> design_antialias_fir(std::size_t k) {
    if (k == 0) throw std::invalid_argument("design_antialias_fir: k must be positive");
    const std::size_t len = 8 * k + 1;
    const double centre = static_cast<double>(4 * k);
    const double cutoff = 1.0 / static_cast<double>(k);  // normalized to Nyquist
    std::vector<double> h(len);
    double total = 0.0;
    for (std::size_t n = 0; n < len; ++n) {
        const double m = static_cast<double>(n) - centre;
        const double arg = std::numbers::pi * cutoff * m;
        const double sinc = m == 0.0 ? 1.0 : std::sin(arg) / arg;
        const double window = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(len - 1));
        h[n] = cutoff * sinc * window;
        total += h[n];
    }
    for (double& v : h) v /= total;
    return h;
}

std::vector<double> filtfilt(std::span<const double> taps, std::span<const double> x) {
    if (taps.empty()) throw std::invalid_argument("filtfilt: empty taps");
    if (x.empty()) return {};
    const std::size_t n = x.size();
    // Both passes are causal, so each needs a full filter length of history
    // to keep start-up transients out of the returned span.
    const std::size_t pad = taps.size() - 1;
    const std::size_t total = n + 2 * pad;

    std::vector<double> padded(total);
    for (std::size_t i = 0; i < total; ++i) {
        padded[i] = x[reflect_index(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(pad), n)];
    }
    auto run = [&](const std::vector<double>& in) {
        std::vector<double> out(in.size(), 0.0);
        for (std::size_t t = 0; t < in.size(); ++t) {
            double acc = 0.0;
            const std::size_t mmax = std::min(taps.size() - 1, t);
            for (std::size_t m = 0; m <= mmax; ++m) acc += taps[m] * in[t - m];
            out[t] = acc;
        }
        return out;
    };
    auto forward = run(padded);
    std::reverse(forward.begin(), forward.end());
    auto backward = run(forward);
    std::reverse(backward.begin(), backward.end());
    return {backward.begin() + static_cast<std::ptrdiff_t>(pad),
            backward.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

signals::SignalSet downsample(const signals::SignalSet& s, const DecimationConfig& cfg) {
    if (cfg.k == 0) throw std::invalid_argument("downsample: k must be positive");
    if (cfg.phase >= cfg.k) throw std::invalid_argument("downsample: phase must lie in [0, k)");
    const std::size_t T = s.length();
    if (cfg.k > T) throw std::invalid_argument("downsample: k exceeds series length");
    if (cfg.k == 1) return s;

    const std::size_t new_T = decimated_length(T, cfg.k, cfg.phase);
    signals::RowMatrix out(static_cast<Eigen::Index>(s.dims()), static_cast<Eigen::Index>(new_T));
    const auto taps = cfg.anti_alias ? design_antialias_fir(cfg.k) : std::vector<double>{};
    for (std::size_t i = 0; i < s.dims(); ++i) {
        std::vector<double> filtered;
        std::span<const double> src = s.series(i);
        if (cfg.anti_alias) {
            filtered = filtfilt(taps, src);
            src = filtered;
        }
        for (std::size_t m = 0; m < new_T; ++m) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) = src[cfg.phase + m * cfg.k];
        }
    }
    return {std::move(out), s.sampling_period() * static_cast<double>(cfg.k), s.labels()};
}

Embedding lag_embed(std::span<const std::span<const double>> series, std::size_t target_series, std::size_t Q,
                    std::span<const std::size_t> regressor_series, bool include_contemporaneous) {
    if (target_series >= series.size()) throw std::out_of_range("lag_embed: target index out of range");
    const std::size_t T = series[target_series].size();
    if (Q < 1) throw std::invalid_argument("lag_embed: Q must be at least 1");
    if (Q >= T) throw std::invalid_argument("lag_embed: Q must be smaller than the series length");
    for (std::size_t r : regressor_series) {
        if (r >= series.size()) throw std::out_of_range("lag_embed: regressor index out of range");
        if (series[r].size() != T) throw std::invalid_argument("lag_embed: series lengths differ");
    }

    const std::size_t rows = T - Q;
    const std::size_t first_lag = include_contemporaneous ? 0 : 1;
    const std::size_t per_series = Q - first_lag + 1;
    const std::size_t cols = 1 + regressor_series.size() * per_series;

    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<numerics::ColumnLabel> labels;
    labels.reserve(cols);
    X.col(0).setOnes();
    labels.push_back({});
    Eigen::Index c = 1;
    for (std::size_t r : regressor_series) {
        const auto& src = series[r];
        for (std::size_t q = first_lag; q <= Q; ++q, ++c) {
            const std::size_t offset = Q - q;
            for (std::size_t t = 0; t < rows; ++t) X(static_cast<Eigen::Index>(t), c) = src[t + offset];
            labels.push_back({r, q});
        }
    }
    const auto& tgt = series[target_series];
    std::vector<double> target(tgt.begin() + static_cast<std::ptrdiff_t>(Q), tgt.end());
    return {numerics::DesignMatrix(std::move(X), std::move(labels)), std::move(target), Q};
}

Embedding lag_embed(const signals::SignalSet& s, std::size_t target_series, std::size_t Q,
                    std::span<const std::size_t> regressor_series, bool include_contemporaneous) {
    std::vector<std::span<const double>> views;
    views.reserve(s.dims());
    for (std::size_t i = 0; i < s.dims(); ++i) views.push_back(s.series(i));
    return lag_embed(views, target_series, Q, regressor_series, include_contemporaneous);
}

}  // namespace ccd::sampling
