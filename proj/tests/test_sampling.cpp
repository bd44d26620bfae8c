#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ccd/numerics.hpp"
#include "ccd/sampling.hpp"
#include "ccd/signals.hpp"
#include "oracles.hpp"

using namespace ccd::sampling;
using ccd::signals::SignalSet;

namespace {

SignalSet ramp(std::size_t T, std::size_t D = 1) {
    std::vector<std::vector<double>> series(D, std::vector<double>(T));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t t = 0; t < T; ++t) series[i][t] = static_cast<double>(t) + 1000.0 * static_cast<double>(i);
    return {series, 1.0, {}};
}

std::size_t peak_lag(std::span<const double> a, std::span<const double> b, std::size_t max_lag) {
    std::size_t best = 0;
    double best_c = -2.0;
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        const double c = oracle::cross_correlation(a, b, lag);
        if (c > best_c) best_c = c, best = lag;
    }
    return best;
}

}  // namespace

TEST_CASE("downsample: identity, length, period, phase") {
    const auto s = ramp(101, 2);
    CHECK(downsample(s, {1, false, 0}) == s);
    CHECK(downsample(s, {1, true, 0}) == s);  // anti-alias skipped at k = 1

    const auto d = downsample(s, {10, false, 0});
    CHECK(d.length() == 11);
    CHECK(d.sampling_period() == 10.0);
    CHECK(d.series(0)[3] == 30.0);
    CHECK(d.series(1)[3] == 1030.0);
    CHECK(decimated_length(101, 10) == 11);

    const auto p = downsample(s, {10, false, 3});
    CHECK(p.length() == 10);
    CHECK(p.series(0)[0] == 3.0);
    CHECK(decimated_length(101, 10, 3) == 10);

    CHECK_THROWS_AS((void)downsample(s, {0, false, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)downsample(s, {4, false, 4}), std::invalid_argument);
    CHECK_THROWS_AS((void)downsample(s, {102, false, 0}), std::invalid_argument);
}

TEST_CASE("property: decimation composes") {
    const auto s = ramp(1000);
    for (std::size_t k1 : {1, 2, 3, 5}) {
        for (std::size_t k2 : {1, 2, 4, 7}) {
            const auto twice = downsample(downsample(s, {k1, false, 0}), {k2, false, 0});
            const auto once = downsample(s, {k1 * k2, false, 0});
            CHECK(twice.data() == once.data());
            CHECK(twice.sampling_period() == once.sampling_period());
        }
    }
}

TEST_CASE("downsample: a pure delay of 50 becomes a delay of 5 at k = 10") {
    auto spec = ccd::signals::default_coupled_spec();
    spec.coupling_taps = ccd::signals::design_delay_fir(50, 0);
    spec.seed = 4;
    const auto [raw, truth] = ccd::signals::generate_pair(spec);
    const auto d = downsample(raw, {10, false, 0});
    CHECK(peak_lag(d.series(0), d.series(1), 30) == 5);
}

TEST_CASE("anti-alias filter design and zero-phase filtering") {
    for (std::size_t k : {2, 5, 10}) {
        const auto h = design_antialias_fir(k);
        CHECK(h.size() == 8 * k + 1);
        CHECK(std::accumulate(h.begin(), h.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i] == doctest::Approx(h[h.size() - 1 - i]).epsilon(1e-14));
    }

    // Zero phase: a smooth bump keeps its peak location.
    std::vector<double> bump(400);
    for (std::size_t t = 0; t < bump.size(); ++t) {
        const double u = (static_cast<double>(t) - 200.0) / 20.0;
        bump[t] = std::exp(-u * u);
    }
    const auto f = filtfilt(design_antialias_fir(4), bump);
    CHECK(f.size() == bump.size());
    CHECK(std::max_element(f.begin(), f.end()) - f.begin() == 200);

    // Constants pass through unchanged thanks to unit DC gain and reflect padding.
    const std::vector<double> flat(50, 3.0);
    for (double v : filtfilt(design_antialias_fir(3), flat)) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));

    // A tone above the new Nyquist rate is strongly attenuated.
    std::vector<double> tone(2000);
    for (std::size_t t = 0; t < tone.size(); ++t) tone[t] = std::sin(0.9 * M_PI * static_cast<double>(t));
    const auto attenuated = filtfilt(design_antialias_fir(4), tone);
    double power = 0.0;
    for (std::size_t t = 200; t < 1800; ++t) power += attenuated[t] * attenuated[t];
    CHECK(power / 1600.0 < 1e-3);
}

TEST_CASE("lag_embed: direct construction") {
    const SignalSet s(std::vector<std::vector<double>>{{1, 2, 3, 4, 5}}, 1.0, {});
    const std::vector<std::size_t> self{0};
    const auto e = lag_embed(s, 0, 1, self);
    CHECK(e.target == std::vector<double>{2, 3, 4, 5});
    REQUIRE(e.matrix.cols() == 2);
    CHECK(e.matrix.labels()[0].is_intercept());
    CHECK(e.matrix.labels()[1] == ccd::numerics::ColumnLabel{0, 1});
    for (std::size_t r = 0; r < 4; ++r) {
        CHECK(e.matrix.values()(r, 0) == 1.0);
        CHECK(e.matrix.values()(r, 1) == static_cast<double>(r + 1));
    }
    CHECK(lag_embed(s, 0, 2, self).matrix.rows() == 3);

    CHECK_THROWS_AS((void)lag_embed(s, 0, 5, self), std::invalid_argument);
    CHECK_THROWS_AS((void)lag_embed(s, 0, 0, self), std::invalid_argument);
    CHECK_THROWS_AS((void)lag_embed(s, 1, 1, self), std::out_of_range);
}

TEST_CASE("property: lag_embed never looks ahead") {
    const auto s = ramp(40, 3);  // value encodes (series, time)
    const std::vector<std::size_t> regs{2, 0, 1};
    for (bool contemporaneous : {false, true}) {
        const std::size_t Q = 4;
        const auto e = lag_embed(s, 1, Q, regs, contemporaneous);
        CHECK(e.matrix.rows() == 40 - Q);
        for (std::size_t r = 0; r < e.matrix.rows(); ++r) {
            const double target_time = e.target[r] - 1000.0;
            CHECK(target_time == static_cast<double>(r + Q));
            for (std::size_t c = 1; c < e.matrix.cols(); ++c) {
                const auto& label = e.matrix.labels()[c];
                const double v = e.matrix.values()(r, c);
                const double series = std::floor(v / 1000.0);
                const double time = v - 1000.0 * series;
                CHECK(series == static_cast<double>(label.series));
                CHECK(time == static_cast<double>(r + Q - label.lag));
                CHECK(time <= target_time - (contemporaneous ? 0.0 : 1.0));
            }
        }
    }
}

TEST_CASE("lag_embed + ols_fit recovers an AR(1) coefficient") {
    const std::vector<double> c{0.7};
    const auto x = ccd::signals::gen_ar(c, 1.0, 100000, 500, 21);
    const SignalSet s(std::vector<std::vector<double>>{x}, 1.0, {});
    const std::vector<std::size_t> self{0};
    const auto e = lag_embed(s, 0, 1, self);
    const auto fit = ccd::numerics::ols_fit(e.matrix, e.target);
    CHECK(std::abs(fit.coefficients(1) - 0.7) < 1e-2);
}
