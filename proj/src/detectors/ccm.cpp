#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ccd/detectors.hpp"
#include "ccd/numerics.hpp"
#include "ccd/random.hpp"

namespace ccd::detect {

namespace {

struct Neighbor {
    double dist;
    std::size_t index;
    bool operator<(const Neighbor& o) const noexcept {
        return dist < o.dist || (dist == o.dist && index < o.index);
    }
};

// Delay vectors of `effect`: point i (time t = i + (E-1)τ) holds
// effect[t], effect[t-τ], ..., effect[t-(E-1)τ].
class ShadowManifold {
public:
    ShadowManifold(std::span<const double> effect, std::size_t E, std::size_t tau)
        : E_(E), offset_((E - 1) * tau), n_(effect.size() - offset_), coords_(n_ * E) {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t t = i + offset_;
            for (std::size_t e = 0; e < E; ++e) coords_[i * E + e] = effect[t - e * tau];
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t time_of(std::size_t i) const noexcept { return i + offset_; }

    [[nodiscard]] double distance(std::size_t a, std::size_t b) const noexcept {
        double s = 0.0;
        const double* pa = &coords_[a * E_];
        const double* pb = &coords_[b * E_];
        for (std::size_t e = 0; e < E_; ++e) {
            const double d = pa[e] - pb[e];
            s += d * d;
        }
        return std::sqrt(s);
    }

private:
    std::size_t E_;
    std::size_t offset_;
    std::size_t n_;
    std::vector<double> coords_;
};

// Simplex-projection estimate of the cause at each prediction point using
// neighbours drawn from `library` (point indices, sorted).
double cross_map_skill(const ShadowManifold& m, std::span<const double> cause, std::span<const std::size_t> library,
                       std::span<const std::size_t> predictions, std::size_t k) {
    std::vector<double> estimates;
    std::vector<double> truth;
    estimates.reserve(predictions.size());
    truth.reserve(predictions.size());
    std::vector<Neighbor> cand;
    cand.reserve(library.size());
    for (std::size_t p : predictions) {
        cand.clear();
        for (std::size_t l : library) {
            if (l == p) continue;
            cand.push_back({m.distance(p, l), l});
        }
        if (cand.size() < k) continue;
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
        const double d_min = cand.front().dist;
        double wsum = 0.0;
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double w = d_min > 0.0 ? std::exp(-cand[j].dist / d_min) : 1.0;
            wsum += w;
            acc += w * cause[m.time_of(cand[j].index)];
        }
        estimates.push_back(acc / wsum);
        truth.push_back(cause[m.time_of(p)]);
    }
    if (estimates.size() < 2) return 0.0;
    return numerics::pearson(estimates, truth);
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, SplitMix64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(i, n - 1));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

std::size_t ccm_embedded_points(std::size_t T, std::size_t E, std::size_t tau_embed) {
    if (E == 0 || tau_embed == 0) return 0;
    const std::size_t span = (E - 1) * tau_embed;
    return T > span ? T - span : 0;
}

CcmResult cross_map(std::span<const double> cause, std::span<const double> effect, const CcmOptions& options) {
    if (cause.size() != effect.size()) throw std::invalid_argument("ccm: series lengths differ");
    if (options.E < 1) throw std::invalid_argument("ccm: E must be at least 1");
    if (options.tau_embed < 1) throw std::invalid_argument("ccm: tau_embed must be at least 1");
    const std::size_t n_points = ccm_embedded_points(effect.size(), options.E, options.tau_embed);
    const std::size_t k = options.n_neighbors == 0 ? options.E + 1 : options.n_neighbors;
    if (n_points < k + 2) throw std::invalid_argument("ccm: series too short for the embedding");

    std::vector<std::size_t> sizes = options.library_sizes;
    if (sizes.empty()) {
        // Five geometrically spaced sizes from 2(k+1) up to every point.
        const double lo = static_cast<double>(std::min(n_points, 2 * (k + 1)));
        const double hi = static_cast<double>(n_points);
        for (int i = 0; i < 5; ++i) {
            const auto L = static_cast<std::size_t>(std::round(lo * std::pow(hi / lo, i / 4.0)));
            if (sizes.empty() || L > sizes.back()) sizes.push_back(L);
        }
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] <= k) throw std::invalid_argument("ccm: library size must exceed the neighbour count");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("ccm: library sizes must be strictly increasing");
    }
    if (sizes.back() > n_points) throw std::invalid_argument("ccm: library size exceeds the number of embedded points");

    const ShadowManifold manifold(effect, options.E, options.tau_embed);
    SplitMix64 rng(options.seed);

    std::vector<std::size_t> predictions;
    if (options.max_predictions == 0 || options.max_predictions >= n_points) {
        predictions.resize(n_points);
        std::iota(predictions.begin(), predictions.end(), std::size_t{0});
    } else {
        predictions = sample_without_replacement(n_points, options.max_predictions, rng);
    }

    CcmResult out;
    out.E = options.E;
    out.tau_embed = options.tau_embed;
    out.library_sizes = sizes;
    for (std::size_t L : sizes) {
        const std::size_t draws = L == n_points ? 1 : std::max<std::size_t>(options.n_samples, 1);
        double total = 0.0;
        for (std::size_t s = 0; s < draws; ++s) {
            std::vector<std::size_t> library;
            if (L == n_points) {
                library.resize(n_points);
                std::iota(library.begin(), library.end(), std::size_t{0});
            } else {
                library = sample_without_replacement(n_points, L, rng);
            }
            total += cross_map_skill(manifold, cause, library, predictions, k);
        }
        out.skills.push_back(std::clamp(total / static_cast<double>(draws), -1.0, 1.0));
    }
    out.converged = out.skills.back() - out.skills.front() > options.convergence_margin &&
                    out.skills.back() > options.min_skill;
    return out;
}

CcmPair ccm(std::span<const double> x, std::span<const double> y, const CcmOptions& options) {
    CcmOptions reverse = options;
    reverse.seed = derive_seed(options.seed, 1);
    return {cross_map(x, y, options), cross_map(y, x, reverse)};
}

}  // namespace ccd::detect
