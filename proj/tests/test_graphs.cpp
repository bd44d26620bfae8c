#include <doctest.h>

#include "ccd/graph_io.hpp"
#include "ccd/graphs.hpp"
#include "ccd/random.hpp"

using namespace ccd::graphs;

TEST_CASE("summarize") {
    const WindowGraph empty(3, 4);
    CHECK(summarize(empty).edge_count() == 0);

    WindowGraph one(3, 5);
    one.set_lagged(0, 1, 3);
    const auto s1 = summarize(one);
    CHECK(s1.edge(0, 1));
    CHECK(s1.edge_count() == 1);

    WindowGraph two(3, 5);
    two.set_lagged(0, 1, 1);
    two.set_lagged(0, 1, 5);
    CHECK(summarize(two) == s1);

    WindowGraph self(2, 2, true);
    self.set_lagged(0, 0, 1);  // autoregression is legal but never summarized
    self.set_instantaneous(1, 0);
    const auto s2 = summarize(self);
    CHECK_FALSE(s2.edge(0, 0));
    CHECK(s2.edge(1, 0));
    CHECK(s2.edge_count() == 1);
}

TEST_CASE("property: summarize is monotone") {
    ccd::SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        WindowGraph w(4, 3);
        for (int e = 0; e < 5; ++e) w.set_lagged(rng.uniform_int(0, 3), rng.uniform_int(0, 3), 1 + rng.uniform_int(0, 2));
        const auto before = summarize(w);
        w.set_lagged(rng.uniform_int(0, 3), rng.uniform_int(0, 3), 1 + rng.uniform_int(0, 2));
        const auto after = summarize(w);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (before.edge(i, j)) CHECK(after.edge(i, j));
    }
}

TEST_CASE("instantaneous slice stays loop-free and acyclic") {
    WindowGraph w(3, 1, true);
    CHECK_THROWS_AS(w.set_instantaneous(1, 1), std::invalid_argument);
    w.set_instantaneous(0, 1);
    w.set_instantaneous(1, 2);
    CHECK(w.instantaneous_is_acyclic());
    CHECK_THROWS_AS(w.set_instantaneous(2, 0), std::invalid_argument);
    CHECK_FALSE(w.instantaneous(2, 0));  // rejected edge not kept
    CHECK(w.instantaneous_is_acyclic());
    CHECK(w.edge_count() == 2);

    WindowGraph lagged_only(2, 2);
    CHECK_FALSE(lagged_only.has_instantaneous());
    CHECK_THROWS_AS(lagged_only.set_lagged(0, 1, 0), std::out_of_range);
    CHECK_THROWS_AS(lagged_only.set_lagged(0, 1, 3), std::out_of_range);
}

TEST_CASE("score: formulas and conventions") {
    SummaryGraph truth(2);
    truth.set_edge(0, 1);
    const auto perfect = score(truth, truth);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);

    const auto half = metrics_from_counts(1, 1, 1);
    CHECK(half.precision == 0.5);
    CHECK(half.recall == 0.5);
    CHECK(half.f1 == 0.5);

    const SummaryGraph empty(2);
    const auto both_empty = score(empty, empty);
    CHECK(both_empty.f1 == 1.0);

    const auto missed = score(empty, truth);
    CHECK(missed.precision == 0.0);
    CHECK(missed.recall == 0.0);
    CHECK(missed.f1 == 0.0);

    const auto false_alarm = score(truth, empty);
    CHECK(false_alarm.fp == 1);
    CHECK(false_alarm.recall == 0.0);
    CHECK(false_alarm.f1 == 0.0);

    SummaryGraph diag(2);
    diag.set_edge(0, 0);
    CHECK(score(diag, empty).fp == 0);  // diagonal excluded

    CHECK_THROWS_AS((void)score(SummaryGraph(2), SummaryGraph(3)), std::invalid_argument);
}

TEST_CASE("property: swapping predicted and truth swaps precision and recall") {
    ccd::SplitMix64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        SummaryGraph a(4), b(4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                a.set_edge(i, j, rng.uniform() < 0.3);
                b.set_edge(i, j, rng.uniform() < 0.3);
            }
        }
        const auto ab = score(a, b);
        const auto ba = score(b, a);
        CHECK(ab.fp == ba.fn);
        CHECK(ab.fn == ba.fp);
        CHECK(ab.f1 == doctest::Approx(ba.f1).epsilon(1e-15));
        CHECK(ab.f1 <= 1.0);
        CHECK(ab.f1 >= 0.0);
        if (ab.tp + ab.fp + ab.fn > 0) CHECK((ab.f1 == 0.0) == (ab.tp == 0));
        if (ab.tp > 0 || ab.fp > 0) CHECK(ab.precision == doctest::Approx(double(ab.tp) / double(ab.tp + ab.fp)));
        if (ab.tp > 0 || ab.fn > 0) CHECK(ab.recall == doctest::Approx(double(ab.tp) / double(ab.tp + ab.fn)));
        CHECK((ab.f1 == 1.0) == (ab.fp == 0 && ab.fn == 0));
    }
}

TEST_CASE("detection_window") {
    const auto w = detection_window(50, 5);
    CHECK(w.k_min == 10.0);
    CHECK(w.k_max == 50.0);
    CHECK(w.contains(20));
    CHECK_FALSE(w.contains(2));
    CHECK_FALSE(w.contains(60));
    const auto full = detection_window(50, 50);
    CHECK(full.k_min == 1.0);
    CHECK(detection_window(8, 8).contains(1));
    for (std::size_t Q : {1, 3, 7, 100}) CHECK(detection_window(37.5, Q).contains(37.5));
    CHECK_THROWS_AS((void)detection_window(0, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)detection_window(5, 0), std::invalid_argument);
}

TEST_CASE("edge list and JSON round trip") {
    WindowGraph w(2, 3, true);
    w.set_lagged(0, 1, 2);
    w.set_lagged(1, 1, 1);
    w.set_instantaneous(0, 1);
    const auto text = to_edge_list(w);
    CHECK(text.find("0 -> 1 [lag 2]") != std::string::npos);
    CHECK(text.find("1 -> 1 [lag 1]") != std::string::npos);
    CHECK(text.find("0 -> 1 [lag 0]") != std::string::npos);
    CHECK(to_edge_list(summarize(w)) == "0 -> 1\n");

    nlohmann::json j;
    to_json(j, w);
    CHECK(j.at("kind") == "window");
    CHECK(window_from_json(j) == w);

    nlohmann::json js;
    to_json(js, summarize(w));
    CHECK(summary_from_json(js) == summarize(w));
    CHECK_THROWS((void)summary_from_json(j));
}
