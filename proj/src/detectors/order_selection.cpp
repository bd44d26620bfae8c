#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ccd/detectors.hpp"
#include "ccd/numerics.hpp"
#include "ccd/sampling.hpp"

namespace ccd::detect {

OrderSelection select_order_ic(const signals::SignalSet& s, std::size_t target, std::size_t Q_max,
                               InformationCriterion criterion) {
    if (Q_max < 1) throw std::invalid_argument("select_order_ic: Q_max must be at least 1");
    if (4 * Q_max >= s.length()) throw std::invalid_argument("select_order_ic: need Q_max < T/4");
    const std::size_t D = s.dims();
    std::vector<std::size_t> all(D);
    std::iota(all.begin(), all.end(), std::size_t{0});

    // One embedding at Q_max fixes the common sample window.
    const auto emb = sampling::lag_embed(s, target, Q_max, all);
    const Eigen::MatrixXd& full = emb.matrix.values();
    const Eigen::Map<const Eigen::VectorXd> y(emb.target.data(), static_cast<Eigen::Index>(emb.target.size()));
    const auto n = static_cast<double>(emb.target.size());
    const double penalty = criterion == InformationCriterion::AIC ? 2.0 : std::log(n);

    OrderSelection out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t Q = 1; Q <= Q_max; ++Q) {
        const auto p = static_cast<Eigen::Index>(1 + D * Q);
        Eigen::MatrixXd X(full.rows(), p);
        X.col(0) = full.col(0);
        for (std::size_t i = 0; i < D; ++i) {
            X.middleCols(static_cast<Eigen::Index>(1 + i * Q), static_cast<Eigen::Index>(Q)) =
                full.middleCols(static_cast<Eigen::Index>(1 + i * Q_max), static_cast<Eigen::Index>(Q));
        }
        const auto fit = numerics::ols_fit(X, Eigen::VectorXd(y));
        const double ic = n * std::log(fit.rss / n) + penalty * static_cast<double>(p);
        out.scores.push_back(ic);
        if (ic < best) {
            best = ic;
            out.selected = Q;
        }
    }
    return out;
}

FnnResult false_nearest_neighbors(std::span<const double> x, std::size_t E_max, double rtol, double atol) {
    if (E_max < 1) throw std::invalid_argument("false_nearest_neighbors: E_max must be at least 1");
    if (x.size() < E_max + 3) throw std::invalid_argument("false_nearest_neighbors: series too short for E_max");
    const double sigma = std::sqrt(numerics::variance(x));
    if (!(sigma > 0.0)) throw std::invalid_argument("false_nearest_neighbors: constant series");

    FnnResult out;
    for (std::size_t E = 1; E <= E_max; ++E) {
        // Points i = 0..N-1 hold x_i..x_{i+E-1}; x_{i+E} is the added coordinate.
        const std::size_t N = x.size() - E;
        std::size_t n_false = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t nn = i;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == i) continue;
                double d2 = 0.0;
                for (std::size_t e = 0; e < E && d2 < best; ++e) {
                    const double d = x[i + e] - x[j + e];
                    d2 += d * d;
                }
                if (d2 < best) {
                    best = d2;
                    nn = j;
                }
            }
            const double r = std::sqrt(best);
            const double extra = std::abs(x[i + E] - x[nn + E]);
            const bool relative_false = r > 0.0 ? extra / r > rtol : extra > 0.0;
            const bool absolute_false = std::sqrt(best + extra * extra) / sigma > atol;
            if (relative_false || absolute_false) ++n_false;
        }
        out.fractions.push_back(static_cast<double>(n_false) / static_cast<double>(N));
    }
    for (std::size_t E = 1; E <= E_max; ++E) {
        if (out.fractions[E - 1] < 0.01) {
            out.selected_E = E;
            out.found = true;
            return out;
        }
    }
    out.selected_E = E_max;
    return out;
}

}  // namespace ccd::detect
