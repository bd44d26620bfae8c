#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccd/detectors.hpp"
#include "ccd/numerics.hpp"
#include "ccd/sampling.hpp"

namespace ccd::detect {

namespace {

struct NestedFits {
    double rss_full = 0.0;
    double rss_restricted = 0.0;
    double tss = 0.0;  // centred total sum of squares of the target rows
    double ssq = 0.0;  // uncentred sum of squares of the target rows
    std::size_t n = 0;
    std::size_t rank_full = 0;
};

// Restricted-model RSS at or below this fraction of the target's centred
// sum of squares counts as perfectly self-predictable.
constexpr double kDegenerateFraction = 1e-14;

NestedFits fit_nested(std::span<const double> x, std::span<const double> y, std::size_t Q) {
    if (x.size() != y.size()) throw std::invalid_argument("granger: series lengths differ");
    if (Q < 1) throw std::invalid_argument("granger: Q must be at least 1");
    if (y.size() <= 2 * Q + 2) throw std::invalid_argument("granger: series too short for window Q (need T > 2Q + 2)");

    const std::array<std::span<const double>, 2> series{y, x};
    const std::array<std::size_t, 2> regressors{0, 1};
    const auto emb = sampling::lag_embed(series, 0, Q, regressors);

    const auto full = numerics::ols_fit(emb.matrix, emb.target);
    const auto restricted = numerics::ols_fit(emb.matrix.leading_columns(1 + Q), emb.target);

    NestedFits f;
    f.rss_full = full.rss;
    f.rss_restricted = restricted.rss;
    f.n = emb.target.size();
    f.rank_full = full.rank;
    const double m = numerics::mean(emb.target);
    for (double v : emb.target) {
        f.tss += (v - m) * (v - m);
        f.ssq += v * v;
    }
    return f;
}

bool degenerate(const NestedFits& f) {
    // A target that is constant up to rounding has nothing left to explain.
    return f.rss_restricted <= kDegenerateFraction * f.tss || f.tss <= kDegenerateFraction * f.ssq ||
           f.rss_restricted <= 0.0;
}

void fill_diagnostics(DetectorResult& r, const NestedFits& f, std::size_t Q) {
    r.diagnostics["rss_full"] = f.rss_full;
    r.diagnostics["rss_restricted"] = f.rss_restricted;
    r.diagnostics["n_effective"] = static_cast<double>(f.n);
    r.diagnostics["dof1"] = static_cast<double>(Q);
    r.diagnostics["dof2"] = static_cast<double>(f.n) - 2.0 * static_cast<double>(Q) - 1.0;
    r.diagnostics["rank_full"] = static_cast<double>(f.rank_full);
    r.diagnostics["degenerate_restricted"] = degenerate(f) ? 1.0 : 0.0;
}

}  // namespace

DetectorResult gc_variance_reduction(std::span<const double> x, std::span<const double> y, std::size_t Q,
                                     double theta) {
    const auto f = fit_nested(x, y, Q);
    DetectorResult r;
    r.threshold = theta;
    if (degenerate(f)) {
        r.statistic = 0.0;
    } else {
        r.statistic = std::clamp(1.0 - f.rss_full / f.rss_restricted, 0.0, 1.0);
    }
    r.decision = r.statistic > r.threshold;
    fill_diagnostics(r, f, Q);
    return r;
}

DetectorResult gc_f_test(std::span<const double> x, std::span<const double> y, std::size_t Q, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("gc_f_test: alpha must lie in (0, 1)");
    const auto f = fit_nested(x, y, Q);
    const double dof1 = static_cast<double>(Q);
    const double dof2 = static_cast<double>(f.n) - 2.0 * dof1 - 1.0;
    if (!(dof2 > 0.0)) throw std::invalid_argument("gc_f_test: nonpositive denominator degrees of freedom");

    DetectorResult r;
    r.threshold = numerics::f_quantile(1.0 - alpha, dof1, dof2);
    if (degenerate(f)) {
        r.statistic = 0.0;
    } else {
        const double gain = std::max(f.rss_restricted - f.rss_full, 0.0);
        r.statistic = f.rss_full > 0.0 ? (gain / dof1) / (f.rss_full / dof2)
                                       : std::numeric_limits<double>::infinity();
    }
    r.decision = r.statistic > r.threshold;
    fill_diagnostics(r, f, Q);
    return r;
}

}  // namespace ccd::detect
