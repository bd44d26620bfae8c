#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ccd/detectors.hpp"
#include "ccd/numerics.hpp"
#include "ccd/random.hpp"
#include "ccd/sampling.hpp"
#include "ccd/signals.hpp"
#include "oracles.hpp"

using namespace ccd::detect;
using ccd::signals::SignalSet;

namespace {

std::vector<double> lagged_copy(const std::vector<double>& x, std::size_t lag) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t t = lag; t < x.size(); ++t) y[t] = x[t - lag];
    return y;
}

}  // namespace

TEST_CASE("gc_variance_reduction: exact lag-1 copy is fully explained") {
    const auto x = oracle::white_noise(1000, 1);
    const auto y = lagged_copy(x, 1);
    const auto r = gc_variance_reduction(x, y, 1);
    CHECK(r.statistic > 1.0 - 1e-10);
    CHECK(r.decision);
    CHECK(r.diagnostics.at("rss_full") < 1e-18);
    CHECK(r.threshold == kDefaultTheta);
}

TEST_CASE("gc_variance_reduction: independent white noise has a small statistic") {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto x = oracle::white_noise(10000, 2 * s + 100);
        const auto y = oracle::white_noise(10000, 2 * s + 101);
        total += gc_variance_reduction(x, y, 5).statistic;
    }
    CHECK(total / 100.0 < 0.01);
}

TEST_CASE("property: GC statistics lie in [0, 1] and obey the F identity") {
    ccd::SplitMix64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t T = 60 + rng.uniform_int(0, 400);
        const std::size_t Q = 1 + rng.uniform_int(0, 6);
        const auto x = oracle::white_noise(T, rng());
        auto y = oracle::white_noise(T, rng());
        const double c = rng.uniform();
        for (std::size_t t = 2; t < T; ++t) y[t] += c * x[t - 2];
        const auto s = gc_variance_reduction(x, y, Q);
        const auto f = gc_f_test(x, y, Q);
        CHECK(s.statistic >= 0.0);
        CHECK(s.statistic <= 1.0);
        const double n = f.diagnostics.at("n_effective");
        const double dof2 = n - 2.0 * static_cast<double>(Q) - 1.0;
        CHECK(f.diagnostics.at("dof2") == dof2);
        const double expected = s.statistic / (1.0 - s.statistic) * dof2 / static_cast<double>(Q);
        CHECK(std::abs(f.statistic - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
        CHECK(s.decision == (s.statistic > s.threshold));
        CHECK(f.decision == (f.statistic > f.threshold));
    }
}

TEST_CASE("gc_f_test: exact copy is decisive; threshold is the F quantile") {
    const auto x = oracle::white_noise(1000, 3);
    const auto y = lagged_copy(x, 1);
    const auto r = gc_f_test(x, y, 1);
    CHECK(r.decision);
    CHECK(r.statistic > 1e6 * r.threshold);
    const auto w = gc_f_test(x, oracle::white_noise(1000, 4), 3);
    CHECK(w.threshold == doctest::Approx(ccd::numerics::f_quantile(0.999, 3, 997 - 7)).epsilon(1e-14));
    CHECK_THROWS_AS((void)gc_f_test(x, y, 1, 0.0), std::invalid_argument);
}

TEST_CASE("property: GC decisions are invariant under affine rescaling") {
    auto spec = ccd::signals::default_coupled_spec();
    spec.n_samples = 3000;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        spec.seed = seed;
        const auto [data, truth] = ccd::signals::generate_pair(spec);
        const auto x = data.series(0);
        const auto y = data.series(1);
        std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
        for (auto& v : xs) v = -3.0 * v + 7.0;
        for (auto& v : ys) v = 0.01 * v - 2.0;
        for (std::size_t Q : {5, 55}) {
            const auto a = gc_variance_reduction(x, y, Q);
            const auto b = gc_variance_reduction(xs, ys, Q);
            CHECK(a.decision == b.decision);
            CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-8));
            CHECK(gc_f_test(x, y, Q).decision == gc_f_test(xs, ys, Q).decision);
        }
    }
}

TEST_CASE("GC: errors and the zero-restricted-rss case") {
    const auto x = oracle::white_noise(10, 5);
    CHECK_THROWS_AS((void)gc_variance_reduction(x, x, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)gc_variance_reduction(x, std::vector<double>(9, 0.0), 1), std::invalid_argument);
    const std::vector<double> flat(200, 2.5);
    const auto r = gc_variance_reduction(oracle::white_noise(200, 6), flat, 2);
    CHECK(r.statistic == 0.0);
    CHECK_FALSE(r.decision);
    CHECK(r.diagnostics.at("degenerate_restricted") == 1.0);
}

TEST_CASE("quantile_bin") {
    const std::vector<double> v{5, 1, 3, 3, 2, 9};
    const auto b = quantile_bin(v, 2);
    CHECK(b == std::vector<std::uint32_t>{1, 0, 0, 1, 0, 1});  // tie at 3 broken by index
    const auto o = oracle::median_split(v);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(static_cast<int>(b[i]) == o[i]);
    const auto three = quantile_bin(v, 3);
    CHECK(std::count(three.begin(), three.end(), 0u) == 2);
    CHECK(std::count(three.begin(), three.end(), 2u) == 2);
    CHECK_THROWS_AS((void)quantile_bin(std::vector<double>(5, 1.0), 2), std::invalid_argument);
    CHECK_THROWS_AS((void)quantile_bin(v, 1), std::invalid_argument);
}

TEST_CASE("transfer_entropy: deterministic copy at the probed lag") {
    const std::size_t Q = 7;
    const auto x = oracle::white_noise(20000, 8);
    const auto y = lagged_copy(x, Q);
    const auto r = transfer_entropy(x, y, Q, {2, 19, 1});
    CHECK(r.decision);
    // Oracle: H(y_t | y_{t-1}) on the same binned data, rows t = Q..T-1.
    const auto ys = oracle::median_split(y);
    std::vector<int> now(ys.begin() + Q, ys.end()), prev(ys.begin() + Q - 1, ys.end() - 1);
    const double h = oracle::conditional_entropy_bits(now, prev);
    CHECK(std::abs(r.statistic - h) < 0.05);
    CHECK(r.diagnostics.at("h_target_given_self") == doctest::Approx(h).epsilon(1e-12));
    CHECK(std::abs(h - 1.0) < 0.01);
}

TEST_CASE("transfer_entropy: independent inputs rarely pass the surrogate test") {
    std::size_t positives = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto x = oracle::white_noise(2000, 1000 + s);
        const auto y = oracle::white_noise(2000, 5000 + s);
        const auto r = transfer_entropy(x, y, 3, {2, 19, s});
        CHECK(r.statistic >= 0.0);
        positives += r.decision ? 1 : 0;
    }
    CHECK(positives <= 12);
}

TEST_CASE("property: TE is invariant under monotone transforms and nonnegative") {
    ccd::SplitMix64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t T = 50 + rng.uniform_int(0, 500);
        const std::size_t Q = 1 + rng.uniform_int(0, 10);
        const auto x = oracle::white_noise(T, rng());
        auto y = oracle::white_noise(T, rng());
        for (std::size_t t = Q; t < T; ++t) y[t] += 0.5 * x[t - Q];
        std::vector<double> ex(x), cy(y);
        for (auto& v : ex) v = std::exp(v);
        for (auto& v : cy) v = v * v * v;
        const std::size_t bins = 2 + rng.uniform_int(0, 3);
        const auto a = transfer_entropy(x, y, Q, {bins, 9, 4});
        const auto b = transfer_entropy(ex, cy, Q, {bins, 9, 4});
        CHECK(a.statistic >= 0.0);
        CHECK(std::abs(a.statistic - b.statistic) < 1e-12);
        CHECK(a.threshold == doctest::Approx(b.threshold).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)transfer_entropy(std::vector<double>(50, 1.0), oracle::white_noise(50, 1), 2),
                    std::invalid_argument);
}

TEST_CASE("ccm: self cross-map and independent noise") {
    const auto [x, y] = oracle::coupled_logistic(600, 3);
    CcmOptions o;
    o.E = 2;
    o.library_sizes = {20, 100, 400};
    o.seed = 1;
    const auto self = cross_map(x, x, o);
    for (double s : self.skills) CHECK(s > 0.95);
    CHECK(self.library_sizes == o.library_sizes);
    CHECK(self.E == 2);

    o.library_sizes = {};
    o.max_predictions = 500;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto a = oracle::white_noise(5000, 300 + s);
        const auto b = oracle::white_noise(5000, 400 + s);
        o.seed = s;
        const auto r = cross_map(a, b, o);
        worst = std::max(worst, std::abs(r.skills.back()));
        CHECK_FALSE(r.converged);
        for (std::size_t i = 1; i < r.library_sizes.size(); ++i) CHECK(r.library_sizes[i] > r.library_sizes[i - 1]);
    }
    CHECK(worst < 0.1);
}

TEST_CASE("ccm: full library is deterministic; coupled logistic ordering") {
    const auto [x, y] = oracle::coupled_logistic(500, 11);
    CcmOptions o;
    o.E = 2;
    o.library_sizes = {10, 50, 200, 499};
    o.n_samples = 8;
    o.seed = 5;
    const auto p = ccm(x, y, o);
    CHECK(p.x_causes_y.skills.back() > p.y_causes_x.skills.back());
    CHECK(p.x_causes_y.skills.back() > p.x_causes_y.skills.front());
    CHECK(p.x_causes_y.converged);
    for (double s : p.x_causes_y.skills) {
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
    }
    auto other = o;
    other.seed = 999;
    other.library_sizes = {499};
    const auto a = cross_map(x, y, other);
    other.seed = 1000;
    const auto b = cross_map(x, y, other);
    CHECK(a.skills == b.skills);  // only one library of every point exists
}

TEST_CASE("ccm: duplicate points fall back to uniform weights") {
    std::vector<double> periodic(200);
    for (std::size_t t = 0; t < periodic.size(); ++t) periodic[t] = static_cast<double>(t % 4);
    CcmOptions o;
    o.E = 2;
    o.library_sizes = {50, 150};
    const auto r = cross_map(periodic, periodic, o);
    for (double s : r.skills) CHECK(std::isfinite(s));
    CHECK_THROWS_AS((void)cross_map(periodic, periodic, {.E = 2, .library_sizes = {500}}), std::invalid_argument);
}

TEST_CASE("var_window_graph: planted VAR(1) recovery") {
    const oracle::Matrix A{{0.5, 0.0}, {0.4, 0.5}};
    const auto series = oracle::simulate_var1(A, 50000, 31);
    const SignalSet s(series, 1.0, {});
    const auto g = var_window_graph(s, 1);
    CHECK(g.lagged(0, 0, 1));
    CHECK(g.lagged(0, 1, 1));
    CHECK(g.lagged(1, 1, 1));
    CHECK_FALSE(g.lagged(1, 0, 1));
    CHECK(var_window_graph(s, 1, 1e-6, std::numeric_limits<double>::infinity()).edge_count() == 0);
}

TEST_CASE("var_window_graph: ridge = 0 matches per-equation OLS") {
    const oracle::Matrix A{{0.3, -0.2, 0.0}, {0.1, 0.4, 0.0}, {0.0, 0.25, -0.3}};
    const SignalSet s(oracle::simulate_var1(A, 3000, 2), 1.0, {});
    const std::size_t Q = 3;
    const auto fit = fit_var(s, Q, 0.0);
    const std::vector<std::size_t> all{0, 1, 2};
    for (std::size_t j = 0; j < 3; ++j) {
        const auto e = ccd::sampling::lag_embed(s, j, Q, all);
        const auto ref = ccd::numerics::ols_fit(e.matrix, e.target);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t q = 1; q <= Q; ++q)
                CHECK(std::abs(fit.coefficient(i, j, q) - ref.coefficients(static_cast<Eigen::Index>(1 + i * Q + q - 1))) < 1e-9);
    }
}

TEST_CASE("var_window_graph: white noise gives an empty graph in most seeds") {
    std::size_t empty = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SignalSet s(std::vector<std::vector<double>>{oracle::white_noise(20000, 10 * seed),
                                                           oracle::white_noise(20000, 10 * seed + 1)},
                          1.0, {});
        empty += var_window_graph(s, 2).edge_count() == 0 ? 1 : 0;
    }
    CHECK(empty >= 19);
    const SignalSet tiny(std::vector<std::vector<double>>{{1, 2, 3, 4, 5}, {5, 3, 2, 1, 0}}, 1.0, {});
    CHECK_THROWS_AS((void)var_window_graph(tiny, 2), std::invalid_argument);
}

TEST_CASE("select_order_ic") {
    std::size_t bic_hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::vector<double> c{0.6};
        const SignalSet s(std::vector<std::vector<double>>{ccd::signals::gen_ar(c, 1.0, 10000, 200, seed),
                                                           oracle::white_noise(10000, 777 + seed)},
                          1.0, {});
        const auto bic = select_order_ic(s, 0, 10, InformationCriterion::BIC);
        const auto aic = select_order_ic(s, 0, 10, InformationCriterion::AIC);
        bic_hits += bic.selected == 1 ? 1 : 0;
        CHECK(bic.selected <= aic.selected);
        CHECK(bic.scores.size() == 10);
    }
    CHECK(bic_hits >= 18);

    const SignalSet noise(std::vector<std::vector<double>>{oracle::white_noise(5000, 1), oracle::white_noise(5000, 2)},
                          1.0, {});
    CHECK(select_order_ic(noise, 1, 8, InformationCriterion::BIC).selected == 1);
    CHECK_THROWS_AS((void)select_order_ic(noise, 0, 1250, InformationCriterion::AIC), std::invalid_argument);
}

TEST_CASE("false_nearest_neighbors") {
    std::vector<double> sine(1500);
    for (std::size_t t = 0; t < sine.size(); ++t) sine[t] = std::sin(0.3 * static_cast<double>(t));
    const auto r = false_nearest_neighbors(sine, 6);
    CHECK(r.found);
    CHECK(r.selected_E == 2);
    CHECK(r.fractions.size() == 6);
    CHECK(r.fractions[0] > 0.01);

    const auto w = false_nearest_neighbors(oracle::white_noise(1500, 3), 5);
    CHECK_FALSE(w.found);
    CHECK(w.selected_E == 5);
    for (double f : w.fractions) CHECK(f > 0.1);

    CHECK_THROWS_AS((void)false_nearest_neighbors(std::vector<double>(100, 1.0), 3), std::invalid_argument);
}
