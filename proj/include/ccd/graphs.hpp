#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccd::graphs {

/// Directed graph over (series, lag) nodes. Lagged entry (i, j, q) is the
/// edge x_{i,t-q} -> x_{j,t} for q = 1..q_max; the optional instantaneous
/// slice holds x_{i,t} -> x_{j,t} and must stay loop-free and acyclic.
class WindowGraph {
public:
    WindowGraph(std::size_t d, std::size_t q_max, bool with_instantaneous = false);

    [[nodiscard]] std::size_t d() const noexcept { return d_; }
    [[nodiscard]] std::size_t q_max() const noexcept { return q_max_; }

    [[nodiscard]] bool lagged(std::size_t i, std::size_t j, std::size_t q) const;
    void set_lagged(std::size_t i, std::size_t j, std::size_t q, bool present = true);

    [[nodiscard]] bool has_instantaneous() const noexcept { return !instantaneous_.empty(); }
    [[nodiscard]] bool instantaneous(std::size_t i, std::size_t j) const;
    /// Throws std::invalid_argument for a self-loop or an edge that closes a cycle.
    void set_instantaneous(std::size_t i, std::size_t j, bool present = true);

    /// Topological-sort check of the instantaneous slice.
    [[nodiscard]] bool instantaneous_is_acyclic() const;
    [[nodiscard]] std::size_t edge_count() const;

    friend bool operator==(const WindowGraph&, const WindowGraph&) = default;

private:
    [[nodiscard]] std::size_t lag_index(std::size_t i, std::size_t j, std::size_t q) const;

    std::size_t d_;
    std::size_t q_max_;
    std::vector<std::uint8_t> lagged_;
    std::vector<std::uint8_t> instantaneous_;
};

/// Directed graph over series: edge (i, j) means series i causes series j.
class SummaryGraph {
public:
    explicit SummaryGraph(std::size_t d);

    [[nodiscard]] std::size_t d() const noexcept { return d_; }
    [[nodiscard]] bool edge(std::size_t i, std::size_t j) const;
    void set_edge(std::size_t i, std::size_t j, bool present = true);
    [[nodiscard]] std::size_t edge_count() const;

    friend bool operator==(const SummaryGraph&, const SummaryGraph&) = default;

private:
    std::size_t d_;
    std::vector<std::uint8_t> adjacency_;
};

struct GraphMetrics {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// OR-aggregate every lag (and the instantaneous slice) into a summary graph.
/// The diagonal is always cleared.
[[nodiscard]] SummaryGraph summarize(const WindowGraph& w);

/// Precision, recall and F1 over off-diagonal ordered pairs.
///
/// Zero-denominator conventions: with no predicted edges, precision is 0 if
/// any true edge was missed and 1 otherwise; with no true edges, recall is 1
/// when nothing was predicted and 0 otherwise; F1 is 0 when P + R = 0.
[[nodiscard]] GraphMetrics score(const SummaryGraph& predicted, const SummaryGraph& truth);

/// The same conventions applied to raw counts.
[[nodiscard]] GraphMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Closed interval of downsampling factors k for which an influence with the
/// given base-rate delay lands between lag 1 and lag Q: delay/Q <= k <= delay.
struct DetectionWindow {
    double k_min = 0.0;
    double k_max = 0.0;
    [[nodiscard]] bool contains(double k) const noexcept { return k >= k_min && k <= k_max; }
};

[[nodiscard]] DetectionWindow detection_window(double delay, std::size_t Q);

/// Plain-text edge list, one `i -> j [lag q]` line per edge.
[[nodiscard]] std::string to_edge_list(const WindowGraph& w);
[[nodiscard]] std::string to_edge_list(const SummaryGraph& s);

}  // namespace ccd::graphs
