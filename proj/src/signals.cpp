#include "ccd/signals.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ccd/numerics.hpp"
#include "ccd/random.hpp"

namespace ccd::signals {

namespace {

constexpr double kTapEpsilon = 1e-12;
constexpr std::uint64_t kSourceStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

}  // namespace

void DgpSpec::validate() const {
    if (!is_stable_ar(source_ar)) throw std::invalid_argument("DgpSpec: source AR polynomial is not stable");
    if (!is_stable_ar(noise_ar)) throw std::invalid_argument("DgpSpec: noise AR polynomial is not stable");
    if (!(innovation_std > 0.0) || !std::isfinite(innovation_std)) {
        throw std::invalid_argument("DgpSpec: innovation_std must be positive");
    }
    if (!(snr_ratio > 0.0 && snr_ratio <= 1.0)) throw std::invalid_argument("DgpSpec: snr_ratio must lie in (0, 1]");
    if (n_samples < 1) throw std::invalid_argument("DgpSpec: n_samples must be positive");
    for (double t : coupling_taps) {
        if (!std::isfinite(t)) throw std::invalid_argument("DgpSpec: non-finite coupling tap");
    }
}

DgpSpec default_coupled_spec() {
    DgpSpec s;
    s.coupling_taps = design_delay_fir(50, 2);
    return s;
}

DgpSpec default_independent_spec() {
    DgpSpec s;
    s.coupling_taps.clear();
    return s;
}

SignalSet::SignalSet(RowMatrix data, double sampling_period, std::vector<std::string> labels)
    : data_(std::move(data)), sampling_period_(sampling_period), labels_(std::move(labels)) {
    if (data_.rows() < 1 || data_.cols() < 1) throw std::invalid_argument("SignalSet: need D >= 1 and T >= 1");
    if (!data_.allFinite()) throw std::invalid_argument("SignalSet: non-finite sample");
    if (!(sampling_period_ > 0.0) || !std::isfinite(sampling_period_)) {
        throw std::invalid_argument("SignalSet: sampling period must be positive");
    }
    if (labels_.empty()) {
        for (Eigen::Index i = 0; i < data_.rows(); ++i) labels_.push_back("s" + std::to_string(i));
    }
    if (labels_.size() != static_cast<std::size_t>(data_.rows())) {
        throw std::invalid_argument("SignalSet: label count does not match series count");
    }
}

namespace {
RowMatrix stack_rows(const std::vector<std::vector<double>>& series) {
    if (series.empty() || series.front().empty()) throw std::invalid_argument("SignalSet: need D >= 1 and T >= 1");
    const std::size_t T = series.front().size();
    RowMatrix m(static_cast<Eigen::Index>(series.size()), static_cast<Eigen::Index>(T));
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].size() != T) throw std::invalid_argument("SignalSet: series lengths differ");
        for (std::size_t t = 0; t < T; ++t) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = series[i][t];
    }
    return m;
}
}  // namespace

SignalSet::SignalSet(const std::vector<std::vector<double>>& series, double sampling_period,
                     std::vector<std::string> labels)
    : SignalSet(stack_rows(series), sampling_period, std::move(labels)) {}

std::span<const double> SignalSet::series(std::size_t i) const {
    if (i >= dims()) throw std::out_of_range("SignalSet: series index out of range");
    return {data_.data() + i * length(), length()};
}

bool is_stable_ar(std::span<const double> coeffs) {
    const auto p = static_cast<Eigen::Index>(coeffs.size());
    if (p == 0) return true;
    for (double c : coeffs) {
        if (!std::isfinite(c)) return false;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = coeffs[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd roots = companion.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        if (std::abs(roots(i)) >= 1.0 - 1e-12) return false;
    }
    return true;
}

std::vector<double> gen_ar(std::span<const double> coeffs, double innovation_std, std::size_t T,
                           std::size_t burn_in, std::uint64_t seed) {
    if (!is_stable_ar(coeffs)) throw std::invalid_argument("gen_ar: AR coefficients are not stable");
    if (!(innovation_std > 0.0)) throw std::invalid_argument("gen_ar: innovation_std must be positive");

    SplitMix64 rng(seed);
    const std::size_t total = T + burn_in;
    const std::size_t p = coeffs.size();
    std::vector<double> x(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double v = innovation_std * rng.normal();
        for (std::size_t m = 1; m <= p && m <= t; ++m) v += coeffs[m - 1] * x[t - m];
        x[t] = v;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

std::vector<double> design_delay_fir(std::size_t delay, std::size_t half_width) {
    if (delay == 0) throw std::invalid_argument("design_delay_fir: delay must be positive");
    if (half_width >= delay) throw std::invalid_argument("design_delay_fir: half_width must be below delay");
    std::vector<double> taps(delay + half_width + 1, 0.0);
    double total = 0.0;
    for (std::size_t n = delay - half_width; n <= delay + half_width; ++n) {
        const std::size_t dist = n > delay ? n - delay : delay - n;
        taps[n] = static_cast<double>(half_width + 1 - dist);
        total += taps[n];
    }
    for (double& t : taps) t /= total;
    return taps;
}

double group_delay_at_dc(std::span<const double> taps) {
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < taps.size(); ++n) {
        num += static_cast<double>(n) * taps[n];
        den += taps[n];
    }
    if (den == 0.0) throw std::invalid_argument("group_delay_at_dc: taps sum to zero");
    return num / den;
}

std::vector<double> fir_filter(std::span<const double> taps, std::span<const double> x) {
    if (taps.empty()) throw std::invalid_argument("fir_filter: empty taps");
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t m = 0; m < taps.size(); ++m) {
        const double h = taps[m];
        if (h == 0.0) continue;
        for (std::size_t t = m; t < x.size(); ++t) y[t] += h * x[t - m];
    }
    return y;
}

SnrMix mix_snr(std::span<const double> signal_part, std::span<const double> noise_part, double ratio) {
    if (signal_part.size() != noise_part.size()) throw std::invalid_argument("mix_snr: length mismatch");
    if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("mix_snr: ratio must lie in (0, 1]");
    const double vs = numerics::variance(signal_part);
    SnrMix out;
    out.signal_scale = std::sqrt(ratio);
    if (ratio < 1.0) {
        const double vn = numerics::variance(noise_part);
        if (!(vn > 0.0)) throw std::invalid_argument("mix_snr: noise has zero variance");
        out.noise_scale = std::sqrt((1.0 - ratio) * vs / vn);
    }
    out.output.resize(signal_part.size());
    for (std::size_t t = 0; t < signal_part.size(); ++t) {
        out.output[t] = out.signal_scale * signal_part[t] + out.noise_scale * noise_part[t];
    }
    return out;
}

GroundTruth ground_truth_for(const DgpSpec& spec) {
    GroundTruth truth;
    if (spec.coupling_taps.empty()) {
        truth.window = graphs::WindowGraph(2, 1);
        return truth;
    }
    std::size_t last = 0;
    for (std::size_t n = 0; n < spec.coupling_taps.size(); ++n) {
        if (std::abs(spec.coupling_taps[n]) > kTapEpsilon) last = n;
    }
    graphs::WindowGraph window(2, std::max<std::size_t>(last, 1), true);
    for (std::size_t n = 0; n < spec.coupling_taps.size(); ++n) {
        if (std::abs(spec.coupling_taps[n]) <= kTapEpsilon) continue;
        if (n == 0) {
            window.set_instantaneous(0, 1);
        } else {
            window.set_lagged(0, 1, n);
        }
    }
    truth.window = std::move(window);
    truth.summary = graphs::summarize(truth.window);
    truth.effective_delay = group_delay_at_dc(spec.coupling_taps);
    return truth;
}

std::pair<SignalSet, GroundTruth> generate_pair(const DgpSpec& spec) {
    spec.validate();
    const std::size_t T = spec.n_samples;
    const auto x = gen_ar(spec.source_ar, spec.innovation_std, T, spec.burn_in, derive_seed(spec.seed, kSourceStream));
    const auto noise = gen_ar(spec.noise_ar, spec.innovation_std, T, spec.burn_in, derive_seed(spec.seed, kNoiseStream));

    std::vector<double> y;
    if (spec.coupling_taps.empty()) {
        y = noise;
    } else {
        const auto filtered = fir_filter(spec.coupling_taps, x);
        y = mix_snr(filtered, noise, spec.snr_ratio).output;
    }
    SignalSet set(std::vector<std::vector<double>>{x, y}, 1.0, {"x", "y"});
    return {std::move(set), ground_truth_for(spec)};
}

}  // namespace ccd::signals
