#include "ccd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

namespace ccd::numerics {

namespace {

double log_beta(double a, double b) {
#if defined(__GLIBC__)
    // lgamma_r avoids the global signgam write of std::lgamma.
    int sign = 0;
    return ::lgamma_r(a, &sign) + ::lgamma_r(b, &sign) - ::lgamma_r(a + b, &sign);
#else
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
#endif
}

// Continued fraction for I_x(a,b) (Numerical Recipes betacf, modified Lentz).
double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxIter = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction did not converge");
}

}  // namespace

DesignMatrix::DesignMatrix(Eigen::MatrixXd values, std::vector<ColumnLabel> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    if (labels_.size() != static_cast<std::size_t>(values_.cols())) {
        throw std::invalid_argument("DesignMatrix: label count does not match column count");
    }
    if (!values_.allFinite()) {
        throw std::invalid_argument("DesignMatrix: non-finite entry");
    }
}

DesignMatrix DesignMatrix::leading_columns(std::size_t p) const {
    if (p > cols()) throw std::invalid_argument("DesignMatrix: too many leading columns requested");
    return DesignMatrix(values_.leftCols(static_cast<Eigen::Index>(p)),
                        std::vector<ColumnLabel>(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(p)));
}

FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("ols_fit: row count does not match target length");
    if (X.rows() <= X.cols()) throw std::invalid_argument("ols_fit: need more rows than columns");
    if (X.cols() == 0) throw std::invalid_argument("ols_fit: empty design");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankTolerance);

    FitResult out;
    out.n = static_cast<std::size_t>(X.rows());
    out.p = static_cast<std::size_t>(X.cols());
    out.rank = static_cast<std::size_t>(qr.rank());
    out.coefficients = qr.solve(y);
    // Eigen leaves redundant coefficients at zero, but be explicit about it:
    // the trailing (rank..p) pivoted columns are dropped.
    for (Eigen::Index j = qr.rank(); j < X.cols(); ++j) {
        out.coefficients(qr.colsPermutation().indices()(j)) = 0.0;
    }
    out.rss = (y - X * out.coefficients).squaredNorm();
    return out;
}

FitResult ols_fit(const DesignMatrix& X, std::span<const double> y) {
    if (y.size() != X.rows()) throw std::invalid_argument("ols_fit: row count does not match target length");
    const Eigen::Map<const Eigen::VectorXd> target(y.data(), static_cast<Eigen::Index>(y.size()));
    return ols_fit(X.values(), Eigen::VectorXd(target));
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("regularized_incomplete_beta: a and b must be positive");
    }
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("regularized_incomplete_beta: x outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(1.0 - x, b, a) / b;
}

double f_cdf(double f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::domain_error("f_cdf: degrees of freedom must be positive");
    if (std::isnan(f)) throw std::domain_error("f_cdf: NaN argument");
    if (f <= 0.0) return 0.0;
    if (std::isinf(f)) return 1.0;
    const double z = d1 * f / (d1 * f + d2);
    return regularized_incomplete_beta(z, d1 / 2.0, d2 / 2.0);
}

double f_quantile(double p, double d1, double d2) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("f_quantile: p must lie in (0, 1)");
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::domain_error("f_quantile: degrees of freedom must be positive");

    // Solve I_z(d1/2, d2/2) = p for z in (0,1), then map z -> f.
    const double a = d1 / 2.0;
    const double b = d2 / 2.0;
    const double lb = log_beta(a, b);
    double lo = 0.0;
    double hi = 1.0;
    double z = 0.5;
    constexpr int kMaxIter = 400;
    for (int it = 0; it < kMaxIter; ++it) {
        const double g = regularized_incomplete_beta(z, a, b) - p;
        if (g == 0.0) return d2 * z / (d1 * (1.0 - z));
        if (g < 0.0) {
            lo = z;
        } else {
            hi = z;
        }
        // Newton step on the beta CDF; the density is exp((a-1)ln z + (b-1)ln(1-z) - lnB).
        const double log_pdf = (a - 1.0) * std::log(z) + (b - 1.0) * std::log1p(-z) - lb;
        const double pdf = std::exp(log_pdf);
        double next = (pdf > 0.0 && std::isfinite(pdf)) ? z - g / pdf : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - z);
        z = next;
        if (step <= 1e-15 * std::max(z, 1e-300) || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            return d2 * z / (d1 * (1.0 - z));
        }
    }
    if (hi - lo > 1e-12) throw ConvergenceError("f_quantile: root find did not converge");
    return d2 * z / (d1 * (1.0 - z));
}

double shannon_entropy(std::span<const std::size_t> counts) {
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    if (total <= 0.0) throw std::invalid_argument("shannon_entropy: histogram has no positive count");
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h > 0.0 ? h : 0.0;
}

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean: empty input");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: need two equal-length series");
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace ccd::numerics
