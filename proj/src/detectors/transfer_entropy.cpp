#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ccd/detectors.hpp"
#include "ccd/numerics.hpp"
#include "ccd/random.hpp"

namespace ccd::detect {

std::vector<std::uint32_t> quantile_bin(std::span<const double> v, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("quantile_bin: need at least two bins");
    if (v.empty()) throw std::invalid_argument("quantile_bin: empty series");
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == *hi) throw std::invalid_argument("quantile_bin: constant series cannot be binned");

    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<std::uint32_t> symbols(v.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        symbols[order[rank]] = static_cast<std::uint32_t>(rank * bins / v.size());
    }
    return symbols;
}

namespace {

// H(Y_t, Y_{t-1}) - H(Y_{t-1}) - H(Y_t, Y_{t-1}, X_{t-Q}) + H(Y_{t-1}, X_{t-Q}),
// with X read through a circular shift of `shift` samples.
double te_from_symbols(std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ys, std::size_t Q,
                       std::size_t bins, std::size_t shift) {
    const std::size_t T = ys.size();
    const std::size_t b = bins;
    std::vector<std::size_t> joint3(b * b * b, 0);
    for (std::size_t t = Q; t < T; ++t) {
        const std::size_t xi = (t - Q + shift) % T;
        ++joint3[(ys[t] * b + ys[t - 1]) * b + xs[xi]];
    }
    std::vector<std::size_t> now_prev(b * b, 0), prev(b, 0), prev_x(b * b, 0);
    for (std::size_t now = 0; now < b; ++now) {
        for (std::size_t p = 0; p < b; ++p) {
            for (std::size_t s = 0; s < b; ++s) {
                const std::size_t c = joint3[(now * b + p) * b + s];
                now_prev[now * b + p] += c;
                prev[p] += c;
                prev_x[p * b + s] += c;
            }
        }
    }
    const double te = numerics::shannon_entropy(now_prev) - numerics::shannon_entropy(prev) -
                      numerics::shannon_entropy(joint3) + numerics::shannon_entropy(prev_x);
    return std::max(te, 0.0);
}

void check_symbols(std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ys, std::size_t Q,
                   std::size_t bins) {
    if (xs.size() != ys.size()) throw std::invalid_argument("transfer_entropy: series lengths differ");
    if (Q < 1) throw std::invalid_argument("transfer_entropy: Q must be at least 1");
    if (ys.size() <= Q + 2) throw std::invalid_argument("transfer_entropy: series too short (need T > Q + 2)");
    if (bins < 2) throw std::invalid_argument("transfer_entropy: need at least two bins");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] >= bins || ys[i] >= bins) throw std::invalid_argument("transfer_entropy: symbol out of range");
    }
}

}  // namespace

double binned_transfer_entropy(std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ys, std::size_t Q,
                               std::size_t bins) {
    check_symbols(xs, ys, Q, bins);
    return te_from_symbols(xs, ys, Q, bins, 0);
}

DetectorResult transfer_entropy(std::span<const double> x, std::span<const double> y, std::size_t Q,
                                const TransferEntropyOptions& options) {
    if (x.size() != y.size()) throw std::invalid_argument("transfer_entropy: series lengths differ");
    const auto xs = quantile_bin(x, options.bins);
    const auto ys = quantile_bin(y, options.bins);
    check_symbols(xs, ys, Q, options.bins);

    const std::size_t T = y.size();
    DetectorResult r;
    r.statistic = te_from_symbols(xs, ys, Q, options.bins, 0);

    // Shifts that move x by more than the probed lag when the series allows it.
    const bool wide = T > 2 * Q + 2;
    const std::uint64_t lo = wide ? Q + 1 : 1;
    const std::uint64_t hi = wide ? T - Q - 1 : T - 1;
    SplitMix64 rng(options.seed);
    double sur_max = 0.0;
    double sur_sum = 0.0;
    std::size_t at_least = 0;
    for (std::size_t s = 0; s < options.n_surrogates; ++s) {
        const auto shift = static_cast<std::size_t>(rng.uniform_int(lo, hi));
        const double v = te_from_symbols(xs, ys, Q, options.bins, shift);
        sur_max = std::max(sur_max, v);
        sur_sum += v;
        if (v >= r.statistic) ++at_least;
    }
    r.threshold = sur_max;
    r.decision = r.statistic > r.threshold;

    std::vector<std::size_t> now_prev(options.bins * options.bins, 0), prev(options.bins, 0);
    for (std::size_t t = Q; t < T; ++t) {
        ++now_prev[ys[t] * options.bins + ys[t - 1]];
        ++prev[ys[t - 1]];
    }
    r.diagnostics["n_effective"] = static_cast<double>(T - Q);
    r.diagnostics["bins"] = static_cast<double>(options.bins);
    r.diagnostics["h_target_given_self"] = numerics::shannon_entropy(now_prev) - numerics::shannon_entropy(prev);
    r.diagnostics["surrogate_max"] = sur_max;
    r.diagnostics["surrogate_mean"] =
        options.n_surrogates > 0 ? sur_sum / static_cast<double>(options.n_surrogates) : 0.0;
    r.diagnostics["p_value"] =
        static_cast<double>(1 + at_least) / static_cast<double>(1 + options.n_surrogates);
    return r;
}

}  // namespace ccd::detect
