#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ccd/graphs.hpp"
#include "ccd/signals.hpp"

namespace ccd::detect {

/// Outcome of testing one ordered pair source -> target.
///
/// decision is always statistic > threshold. Diagnostic keys per detector:
///   gc_var / gc_f: rss_full, rss_restricted, n_effective, dof1, dof2,
///                  rank_full, degenerate_restricted
///   te:            n_effective, bins, h_target_given_self, surrogate_max,
///                  surrogate_mean, p_value
struct DetectorResult {
    std::size_t source = 0;
    std::size_t target = 1;
    double statistic = 0.0;
    double threshold = 0.0;
    bool decision = false;
    std::map<std::string, double> diagnostics;
};

inline constexpr double kDefaultTheta = 0.05;
inline constexpr double kDefaultAlpha = 0.001;

/// Variance-reduction Granger test of x => y:
/// statistic = 1 - RSS_full / RSS_restricted, where the full model regresses
/// y_t on {1, y_{t-1..t-Q}, x_{t-1..t-Q}} and the restricted model drops the x lags.
/// Requires T > 2Q + 2.
[[nodiscard]] DetectorResult gc_variance_reduction(std::span<const double> x, std::span<const double> y,
                                                   std::size_t Q, double theta = kDefaultTheta);

/// F-statistic Granger test of x => y against the F(Q, n - 2Q - 1) quantile at 1 - alpha.
[[nodiscard]] DetectorResult gc_f_test(std::span<const double> x, std::span<const double> y, std::size_t Q,
                                       double alpha = kDefaultAlpha);

struct TransferEntropyOptions {
    std::size_t bins = 2;
    std::size_t n_surrogates = 19;
    std::uint64_t seed = 0;
};

/// Equal-count (rank) binning into `bins` symbols; ties are broken by index.
/// Throws std::invalid_argument for a constant series.
[[nodiscard]] std::vector<std::uint32_t> quantile_bin(std::span<const double> v, std::size_t bins);

/// TE(x -> y) = H(y_t | y_{t-1}) - H(y_t | y_{t-1}, x_{t-Q}) in bits from
/// plug-in histograms over pre-binned symbols.
[[nodiscard]] double binned_transfer_entropy(std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ys,
                                             std::size_t Q, std::size_t bins);

/// Binned TE with a circular-shift surrogate threshold (max over surrogates of x).
[[nodiscard]] DetectorResult transfer_entropy(std::span<const double> x, std::span<const double> y, std::size_t Q,
                                              const TransferEntropyOptions& options = {});

struct CcmOptions {
    std::size_t E = 2;
    std::size_t tau_embed = 1;
    std::vector<std::size_t> library_sizes;  ///< strictly increasing; empty = automatic
    std::size_t n_neighbors = 0;             ///< 0 means E + 1
    std::size_t n_samples = 10;              ///< random libraries per size
    std::size_t max_predictions = 0;         ///< 0 means every embedded point
    double convergence_margin = 0.1;
    double min_skill = 0.5;
    std::uint64_t seed = 0;
};

struct CcmResult {
    std::vector<std::size_t> library_sizes;
    std::vector<double> skills;  ///< mean cross-map Pearson correlation per library size
    bool converged = false;
    std::size_t E = 0;
    std::size_t tau_embed = 0;
};

struct CcmPair {
    CcmResult x_causes_y;  ///< estimates x from the shadow manifold of y
    CcmResult y_causes_x;
};

/// Number of delay vectors available for a length-T series.
[[nodiscard]] std::size_t ccm_embedded_points(std::size_t T, std::size_t E, std::size_t tau_embed);

/// Cross-map skill for "cause drives effect": simplex projection from the
/// effect's shadow manifold onto the cause.
[[nodiscard]] CcmResult cross_map(std::span<const double> cause, std::span<const double> effect,
                                  const CcmOptions& options);

/// Both directions with the same options.
[[nodiscard]] CcmPair ccm(std::span<const double> x, std::span<const double> y, const CcmOptions& options);

/// Per-equation lagged VAR coefficients. equations[j] holds the intercept
/// followed by lags 1..Q of series 0, then lags 1..Q of series 1, and so on.
struct VarFit {
    std::size_t d = 0;
    std::size_t Q = 0;
    std::vector<Eigen::VectorXd> equations;

    [[nodiscard]] double coefficient(std::size_t source, std::size_t target, std::size_t lag) const;
};

/// Ridge-regularized least squares of every series on all lags 1..Q of all
/// series. The intercept is not penalized. Requires T > D·Q + 2.
[[nodiscard]] VarFit fit_var(const signals::SignalSet& s, std::size_t Q, double ridge);

[[nodiscard]] graphs::WindowGraph var_window_graph(const signals::SignalSet& s, std::size_t Q, double ridge = 1e-6,
                                                   double edge_threshold = 0.1);

enum class InformationCriterion { AIC, BIC };

struct OrderSelection {
    std::size_t selected = 1;
    std::vector<double> scores;  ///< criterion value for Q = 1..Q_max
};

/// Fit the self-plus-cross lag model for Q = 1..Q_max on the common window of
/// rows Q_max..T-1 and return the minimizer of n·ln(RSS/n) + penalty·(1 + D·Q).
/// Ties go to the smaller Q.
[[nodiscard]] OrderSelection select_order_ic(const signals::SignalSet& s, std::size_t target, std::size_t Q_max,
                                             InformationCriterion criterion);

struct FnnResult {
    std::size_t selected_E = 0;
    bool found = false;  ///< false when no E reached the 1% level (selected_E = E_max then)
    std::vector<double> fractions;  ///< false-neighbour fraction for E = 1..E_max
};

/// Kennel-style false nearest neighbours with delay 1.
[[nodiscard]] FnnResult false_nearest_neighbors(std::span<const double> x, std::size_t E_max, double rtol = 15.0,
                                                double atol = 2.0);

}  // namespace ccd::detect
