#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ccd::numerics {

/// Raised when an iterative routine fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tag identifying the regressor held in one design-matrix column.
struct ColumnLabel {
    static constexpr std::size_t kIntercept = std::numeric_limits<std::size_t>::max();

    std::size_t series = kIntercept;  ///< source series index, or kIntercept
    std::size_t lag = 0;              ///< lag q (0 = contemporaneous)

    [[nodiscard]] bool is_intercept() const noexcept { return series == kIntercept; }
    friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

/// Regressor matrix (rows = usable time points, columns = regressors) plus
/// per-column labels. Entries are checked finite on construction.
class DesignMatrix {
public:
    DesignMatrix(Eigen::MatrixXd values, std::vector<ColumnLabel> labels);

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<ColumnLabel>& labels() const noexcept { return labels_; }

    /// Copy of the first `p` columns (a nested sub-model).
    [[nodiscard]] DesignMatrix leading_columns(std::size_t p) const;

private:
    Eigen::MatrixXd values_;
    std::vector<ColumnLabel> labels_;
};

struct FitResult {
    Eigen::VectorXd coefficients;
    double rss = 0.0;  ///< residual sum of squares
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t rank = 0;  ///< numerical rank used by the solve
};

/// Relative pivot tolerance below which a column is treated as redundant.
inline constexpr double kRankTolerance = 1e-10;

/// Least-squares fit via column-pivoted Householder QR.
///
/// Columns whose pivot falls below kRankTolerance times the leading pivot
/// are dropped (coefficient 0); the rss stays well defined.
/// Throws std::invalid_argument on dimension mismatch or n <= p.
[[nodiscard]] FitResult ols_fit(const DesignMatrix& X, std::span<const double> y);
[[nodiscard]] FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Regularized incomplete beta I_x(a, b). Continued fraction (modified Lentz)
/// with the symmetry switch at x = (a+1)/(a+b+2).
[[nodiscard]] double regularized_incomplete_beta(double x, double a, double b);

/// CDF of the F(d1, d2) distribution.
[[nodiscard]] double f_cdf(double f, double d1, double d2);

/// Quantile of F(d1, d2): inverse of f_cdf by safeguarded Newton/bisection.
/// Throws ConvergenceError if the root find does not converge.
[[nodiscard]] double f_quantile(double p, double d1, double d2);

/// Plug-in Shannon entropy in bits. Throws on an all-zero histogram.
[[nodiscard]] double shannon_entropy(std::span<const std::size_t> counts);

// Small helpers shared by several modules.
[[nodiscard]] double mean(std::span<const double> v);
[[nodiscard]] double variance(std::span<const double> v);  ///< population (1/n) variance
[[nodiscard]] double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace ccd::numerics
