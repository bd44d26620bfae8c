#include "ccd/graph_io.hpp"

#include <stdexcept>

namespace ccd::graphs {

void to_json(nlohmann::json& j, const SummaryGraph& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < g.d(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < g.d(); ++k) row.push_back(g.edge(i, k) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    j = nlohmann::json{{"kind", "summary"}, {"d", g.d()}, {"adjacency", std::move(rows)}};
}

void to_json(nlohmann::json& j, const WindowGraph& g) {
    nlohmann::json lagged = nlohmann::json::array();
    for (std::size_t s = 0; s < g.d(); ++s)
        for (std::size_t t = 0; t < g.d(); ++t)
            for (std::size_t q = 1; q <= g.q_max(); ++q)
                if (g.lagged(s, t, q)) lagged.push_back({s, t, q});
    nlohmann::json inst = nullptr;
    if (g.has_instantaneous()) {
        inst = nlohmann::json::array();
        for (std::size_t s = 0; s < g.d(); ++s) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t t = 0; t < g.d(); ++t) row.push_back(g.instantaneous(s, t) ? 1 : 0);
            inst.push_back(std::move(row));
        }
    }
    j = nlohmann::json{{"kind", "window"},
                       {"d", g.d()},
                       {"q_max", g.q_max()},
                       {"lagged", std::move(lagged)},
                       {"instantaneous", std::move(inst)}};
}

SummaryGraph summary_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "summary") throw std::invalid_argument("expected a summary graph");
    const auto d = j.at("d").get<std::size_t>();
    const auto& rows = j.at("adjacency");
    if (rows.size() != d) throw std::invalid_argument("summary graph: adjacency has wrong row count");
    SummaryGraph g(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) throw std::invalid_argument("summary graph: ragged adjacency");
        for (std::size_t k = 0; k < d; ++k) g.set_edge(i, k, rows[i][k].get<int>() != 0);
    }
    return g;
}

WindowGraph window_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "window") throw std::invalid_argument("expected a window graph");
    const auto d = j.at("d").get<std::size_t>();
    const auto q_max = j.at("q_max").get<std::size_t>();
    const auto& inst = j.at("instantaneous");
    WindowGraph g(d, q_max, !inst.is_null());
    for (const auto& e : j.at("lagged")) {
        g.set_lagged(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<std::size_t>());
    }
    if (!inst.is_null()) {
        for (std::size_t s = 0; s < d; ++s)
            for (std::size_t t = 0; t < d; ++t)
                if (inst.at(s).at(t).get<int>() != 0) g.set_instantaneous(s, t);
    }
    return g;
}

}  // namespace ccd::graphs
