#include <doctest.h>

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "ccd/numerics.hpp"
#include "ccd/random.hpp"
#include "oracles.hpp"

using namespace ccd::numerics;

namespace {

Eigen::MatrixXd random_matrix(std::size_t n, std::size_t p, ccd::SplitMix64& rng) {
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = rng.normal();
    return X;
}

oracle::Matrix to_rows(const Eigen::MatrixXd& X) {
    oracle::Matrix rows(X.rows(), std::vector<double>(X.cols()));
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < X.cols(); ++j) rows[i][j] = X(i, j);
    return rows;
}

}  // namespace

TEST_CASE("ols_fit: exact representability gives zero rss") {
    ccd::SplitMix64 rng(1);
    const auto X = random_matrix(12, 3, rng);
    const Eigen::Vector3d beta(1.5, -2.0, 0.25);
    const Eigen::VectorXd y = X * beta;
    const auto fit = ols_fit(X, y);
    CHECK(fit.rss < 1e-20);
    for (int i = 0; i < 3; ++i) CHECK(fit.coefficients(i) == doctest::Approx(beta(i)).epsilon(1e-12));
}

TEST_CASE("ols_fit: intercept-only model returns the mean") {
    Eigen::VectorXd y(5);
    y << 1, 2, 4, 8, 16;
    const auto fit = ols_fit(Eigen::MatrixXd::Ones(5, 1), y);
    const double m = y.mean();
    CHECK(fit.coefficients(0) == doctest::Approx(m).epsilon(1e-14));
    CHECK(fit.rss == doctest::Approx((y.array() - m).square().sum()).epsilon(1e-14));
}

TEST_CASE("ols_fit: constant y with intercept-only model is legal") {
    const auto fit = ols_fit(Eigen::MatrixXd::Ones(4, 1), Eigen::VectorXd::Constant(4, 3.0));
    CHECK(fit.rss == 0.0);
    CHECK(fit.coefficients(0) == doctest::Approx(3.0));
}

TEST_CASE("ols_fit: random 20x3 system matches the normal-equations oracle") {
    ccd::SplitMix64 rng(2024);
    const auto X = random_matrix(20, 3, rng);
    Eigen::VectorXd y(20);
    for (auto& v : y) v = rng.normal();
    const auto fit = ols_fit(X, y);
    const auto beta = oracle::normal_equations(to_rows(X), std::vector<double>(y.data(), y.data() + y.size()));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(fit.coefficients(i) - beta[i]) < 1e-8);
}

TEST_CASE("ols_fit: errors and rank deficiency") {
    CHECK_THROWS_AS((void)ols_fit(Eigen::MatrixXd::Ones(3, 3), Eigen::VectorXd::Ones(3)), std::invalid_argument);
    CHECK_THROWS_AS((void)ols_fit(Eigen::MatrixXd::Ones(5, 2), Eigen::VectorXd::Ones(4)), std::invalid_argument);

    // Duplicate column: one coefficient is zeroed, rss equals that of the reduced fit.
    ccd::SplitMix64 rng(5);
    Eigen::MatrixXd X(30, 3);
    const auto base = random_matrix(30, 2, rng);
    X << base, base.col(1);
    Eigen::VectorXd y(30);
    for (auto& v : y) v = rng.normal();
    const auto fit = ols_fit(X, y);
    const auto reduced = ols_fit(base, y);
    CHECK(fit.rank == 2);
    CHECK(fit.rss == doctest::Approx(reduced.rss).epsilon(1e-10));
    CHECK((fit.coefficients.array() == 0.0).count() == 1);
}

TEST_CASE("DesignMatrix: rejects non-finite entries and label mismatch") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(4, 2);
    CHECK_THROWS_AS(DesignMatrix(X, {ColumnLabel{}}), std::invalid_argument);
    X(1, 1) = std::nan("");
    CHECK_THROWS_AS(DesignMatrix(X, {ColumnLabel{}, ColumnLabel{0, 1}}), std::invalid_argument);
}

TEST_CASE("property: appending columns never increases rss") {
    ccd::SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 15 + rng.uniform_int(0, 40);
        const std::size_t p = 1 + rng.uniform_int(0, 5);
        const auto X = random_matrix(n, p + 3, rng);
        Eigen::VectorXd y(n);
        for (auto& v : y) v = rng.normal();
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t cols = p; cols <= p + 3; ++cols) {
            const double rss = ols_fit(Eigen::MatrixXd(X.leftCols(cols)), y).rss;
            CHECK(rss <= previous * (1 + 1e-12));
            previous = rss;
        }
    }
}

TEST_CASE("regularized_incomplete_beta: closed forms") {
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) CHECK(regularized_incomplete_beta(x, 1, 1) == doctest::Approx(x).epsilon(1e-14));
    for (double a : {0.3, 1.0, 2.5, 17.0, 400.0}) CHECK(regularized_incomplete_beta(0.5, a, a) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(regularized_incomplete_beta(0.0, 2, 3) == 0.0);
    CHECK(regularized_incomplete_beta(1.0, 2, 3) == 1.0);
    CHECK(std::abs(regularized_incomplete_beta(0.3, 2, 5) - oracle::incomplete_beta_quadrature(0.3, 2, 5)) < 1e-10);
    CHECK_THROWS_AS((void)regularized_incomplete_beta(1.5, 1, 1), std::domain_error);
    CHECK_THROWS_AS((void)regularized_incomplete_beta(0.5, 0, 1), std::domain_error);
    CHECK_THROWS_AS((void)regularized_incomplete_beta(0.5, 1, -2), std::domain_error);
}

TEST_CASE("property: incomplete beta is monotone in x and satisfies the symmetry relation") {
    ccd::SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = 0.2 + 30 * rng.uniform();
        const double b = 0.2 + 30 * rng.uniform();
        const double x1 = rng.uniform();
        const double x2 = rng.uniform();
        const double lo = std::min(x1, x2), hi = std::max(x1, x2);
        CHECK(regularized_incomplete_beta(lo, a, b) <= regularized_incomplete_beta(hi, a, b) + 1e-15);
        CHECK(regularized_incomplete_beta(x1, a, b) + regularized_incomplete_beta(1 - x1, b, a) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("f_quantile: median of F(d, d) is one") {
    for (double d : {1.0, 2.0, 3.0, 5.0, 10.0, 37.0, 100.0, 5000.0}) {
        CHECK(std::abs(f_quantile(0.5, d, d) - 1.0) < 1e-9);
    }
}

TEST_CASE("f_quantile: matches bisection on the quadrature CDF") {
    const double oracle_q = oracle::f_quantile_bisection(0.999, 5, 100);
    CHECK(std::abs(f_quantile(0.999, 5, 100) - oracle_q) < 1e-6);
}

TEST_CASE("f_quantile: round trip, monotone in p, large dof, errors") {
    for (double d1 : {1.0, 5.0, 60.0}) {
        for (double d2 : {3.0, 94.0, 19819.0}) {
            double previous = 0.0;
            for (double p : {0.001, 0.05, 0.5, 0.9, 0.999, 0.999999}) {
                const double q = f_quantile(p, d1, d2);
                CHECK(std::abs(f_cdf(q, d1, d2) - p) < 1e-9);
                CHECK(q > previous);
                previous = q;
            }
        }
    }
    CHECK_THROWS_AS((void)f_quantile(0.0, 1, 1), std::domain_error);
    CHECK_THROWS_AS((void)f_quantile(1.0, 1, 1), std::domain_error);
    CHECK_THROWS_AS((void)f_quantile(0.5, 0, 1), std::domain_error);
}

TEST_CASE("shannon_entropy") {
    const std::vector<std::size_t> uniform{5, 5};
    const std::vector<std::size_t> degenerate{7, 0, 0};
    const std::vector<std::size_t> skewed{3, 1};
    CHECK(shannon_entropy(uniform) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(shannon_entropy(degenerate) == 0.0);
    // -(3/4) log2(3/4) - (1/4) log2(1/4)
    CHECK(shannon_entropy(skewed) == doctest::Approx(-(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25))).epsilon(1e-15));
    CHECK(shannon_entropy(skewed) == doctest::Approx(0.811278).epsilon(1e-6));
    const std::vector<std::size_t> zeros{0, 0};
    CHECK_THROWS_AS((void)shannon_entropy(zeros), std::invalid_argument);
}

TEST_CASE("property: entropy is permutation invariant and bounded by the uniform histogram") {
    ccd::SplitMix64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> h(2 + rng.uniform_int(0, 6));
        for (auto& c : h) c = rng.uniform_int(0, 20);
        h[0] += 1;
        auto permuted = h;
        std::reverse(permuted.begin(), permuted.end());
        const double e = shannon_entropy(h);
        CHECK(e == doctest::Approx(shannon_entropy(permuted)).epsilon(1e-14));
        const auto nonzero = static_cast<double>(std::count_if(h.begin(), h.end(), [](std::size_t c) { return c > 0; }));
        CHECK(e <= std::log2(nonzero) + 1e-12);
        const std::vector<std::size_t> flat(h.size(), 4);
        CHECK(e <= shannon_entropy(flat) + 1e-12);
    }
}

TEST_CASE("pearson and variance helpers") {
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{2, 4, 6, 8};
    const std::vector<double> c{4, 3, 2, 1};
    const std::vector<double> flat{1, 1, 1, 1};
    CHECK(pearson(a, b) == doctest::Approx(1.0));
    CHECK(pearson(a, c) == doctest::Approx(-1.0));
    CHECK(pearson(a, flat) == 0.0);
    CHECK(variance(a) == doctest::Approx(1.25));
}
