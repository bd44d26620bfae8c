#include "ccd/graphs.hpp"

#include <sstream>
#include <stdexcept>

namespace ccd::graphs {

WindowGraph::WindowGraph(std::size_t d, std::size_t q_max, bool with_instantaneous)
    : d_(d), q_max_(q_max), lagged_(d * d * q_max, 0) {
    if (d == 0) throw std::invalid_argument("WindowGraph: need at least one series");
    if (with_instantaneous) instantaneous_.assign(d * d, 0);
}

std::size_t WindowGraph::lag_index(std::size_t i, std::size_t j, std::size_t q) const {
    if (i >= d_ || j >= d_) throw std::out_of_range("WindowGraph: series index out of range");
    if (q < 1 || q > q_max_) throw std::out_of_range("WindowGraph: lag out of range");
    return (i * d_ + j) * q_max_ + (q - 1);
}

bool WindowGraph::lagged(std::size_t i, std::size_t j, std::size_t q) const {
    return lagged_[lag_index(i, j, q)] != 0;
}

void WindowGraph::set_lagged(std::size_t i, std::size_t j, std::size_t q, bool present) {
    lagged_[lag_index(i, j, q)] = present ? 1 : 0;
}

bool WindowGraph::instantaneous(std::size_t i, std::size_t j) const {
    if (i >= d_ || j >= d_) throw std::out_of_range("WindowGraph: series index out of range");
    return !instantaneous_.empty() && instantaneous_[i * d_ + j] != 0;
}

void WindowGraph::set_instantaneous(std::size_t i, std::size_t j, bool present) {
    if (i >= d_ || j >= d_) throw std::out_of_range("WindowGraph: series index out of range");
    if (instantaneous_.empty()) instantaneous_.assign(d_ * d_, 0);
    if (!present) {
        instantaneous_[i * d_ + j] = 0;
        return;
    }
    if (i == j) throw std::invalid_argument("WindowGraph: instantaneous self-loop");
    const std::uint8_t previous = instantaneous_[i * d_ + j];
    instantaneous_[i * d_ + j] = 1;
    if (!instantaneous_is_acyclic()) {
        instantaneous_[i * d_ + j] = previous;
        throw std::invalid_argument("WindowGraph: instantaneous edge would create a cycle");
    }
}

bool WindowGraph::instantaneous_is_acyclic() const {
    if (instantaneous_.empty()) return true;
    // Kahn's algorithm.
    std::vector<std::size_t> indegree(d_, 0);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
            if (instantaneous_[i * d_ + j]) ++indegree[j];
    std::vector<std::size_t> ready;
    for (std::size_t j = 0; j < d_; ++j)
        if (indegree[j] == 0) ready.push_back(j);
    std::size_t visited = 0;
    while (!ready.empty()) {
        const std::size_t i = ready.back();
        ready.pop_back();
        ++visited;
        for (std::size_t j = 0; j < d_; ++j) {
            if (instantaneous_[i * d_ + j] && --indegree[j] == 0) ready.push_back(j);
        }
    }
    return visited == d_;
}

std::size_t WindowGraph::edge_count() const {
    std::size_t n = 0;
    for (auto v : lagged_) n += v;
    for (auto v : instantaneous_) n += v;
    return n;
}

SummaryGraph::SummaryGraph(std::size_t d) : d_(d), adjacency_(d * d, 0) {
    if (d == 0) throw std::invalid_argument("SummaryGraph: need at least one series");
}

bool SummaryGraph::edge(std::size_t i, std::size_t j) const {
    if (i >= d_ || j >= d_) throw std::out_of_range("SummaryGraph: index out of range");
    return adjacency_[i * d_ + j] != 0;
}

void SummaryGraph::set_edge(std::size_t i, std::size_t j, bool present) {
    if (i >= d_ || j >= d_) throw std::out_of_range("SummaryGraph: index out of range");
    adjacency_[i * d_ + j] = present ? 1 : 0;
}

std::size_t SummaryGraph::edge_count() const {
    std::size_t n = 0;
    for (auto v : adjacency_) n += v;
    return n;
}

SummaryGraph summarize(const WindowGraph& w) {
    SummaryGraph s(w.d());
    for (std::size_t i = 0; i < w.d(); ++i) {
        for (std::size_t j = 0; j < w.d(); ++j) {
            if (i == j) continue;
            bool any = w.instantaneous(i, j);
            for (std::size_t q = 1; q <= w.q_max() && !any; ++q) any = w.lagged(i, j, q);
            s.set_edge(i, j, any);
        }
    }
    return s;
}

GraphMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    GraphMetrics m{tp, fp, fn, 0.0, 0.0, 0.0};
    if (tp + fp > 0) {
        m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    } else {
        m.precision = fn > 0 ? 0.0 : 1.0;
    }
    if (tp + fn > 0) {
        m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    } else {
        m.recall = fp == 0 ? 1.0 : 0.0;
    }
    const double sum = m.precision + m.recall;
    m.f1 = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
    return m;
}

GraphMetrics score(const SummaryGraph& predicted, const SummaryGraph& truth) {
    if (predicted.d() != truth.d()) throw std::invalid_argument("score: graphs have different sizes");
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.d(); ++i) {
        for (std::size_t j = 0; j < truth.d(); ++j) {
            if (i == j) continue;
            const bool p = predicted.edge(i, j);
            const bool t = truth.edge(i, j);
            if (p && t) ++tp;
            else if (p) ++fp;
            else if (t) ++fn;
        }
    }
    return metrics_from_counts(tp, fp, fn);
}

DetectionWindow detection_window(double delay, std::size_t Q) {
    if (!(delay > 0.0)) throw std::invalid_argument("detection_window: delay must be positive");
    if (Q < 1) throw std::invalid_argument("detection_window: Q must be at least 1");
    return {delay / static_cast<double>(Q), delay};
}

std::string to_edge_list(const WindowGraph& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.d(); ++i) {
        for (std::size_t j = 0; j < w.d(); ++j) {
            if (w.instantaneous(i, j)) os << i << " -> " << j << " [lag 0]\n";
            for (std::size_t q = 1; q <= w.q_max(); ++q) {
                if (w.lagged(i, j, q)) os << i << " -> " << j << " [lag " << q << "]\n";
            }
        }
    }
    return os.str();
}

std::string to_edge_list(const SummaryGraph& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.d(); ++i)
        for (std::size_t j = 0; j < s.d(); ++j)
            if (s.edge(i, j)) os << i << " -> " << j << "\n";
    return os.str();
}

}  // namespace ccd::graphs
