#pragma once

#include <json.hpp>

#include "ccd/graphs.hpp"

namespace ccd::graphs {

// JSON adjacency format.
//
//   summary: {"kind": "summary", "d": D, "adjacency": [[0|1, ...], ...]}
//   window:  {"kind": "window", "d": D, "q_max": Q,
//             "lagged": [[source, target, lag], ...],
//             "instantaneous": [[0|1, ...], ...] | null}

void to_json(nlohmann::json& j, const SummaryGraph& g);
void to_json(nlohmann::json& j, const WindowGraph& g);

[[nodiscard]] SummaryGraph summary_from_json(const nlohmann::json& j);
[[nodiscard]] WindowGraph window_from_json(const nlohmann::json& j);

}  // namespace ccd::graphs
