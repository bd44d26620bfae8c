#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ccd/bench/sweep.hpp"
#include "ccd/graphs.hpp"

namespace ccd::bench {

enum class Metric { F1, Statistic, DecisionRate };

[[nodiscard]] std::string to_string(Metric m);
[[nodiscard]] Metric metric_from_string(const std::string& s);

/// Seed-averaged metric of one cell; `count` excludes skipped records.
struct CellSummary {
    double mean = 0.0;
    std::size_t count = 0;
};

/// Seed averages keyed by (detector, Q, k).
using GridSummary = std::map<std::tuple<std::string, std::size_t, std::size_t>, CellSummary>;

[[nodiscard]] GridSummary summarize_records(std::span<const SweepRecord> records, Metric metric);

/// One colored cell per (Q, k) of a single detector's records. F1 and decision
/// rate use a fixed [0, 1] color scale. Throws std::invalid_argument on a
/// ragged grid or mixed detectors.
[[nodiscard]] std::string render_heatmap(std::span<const SweepRecord> records, Metric metric,
                                         const std::string& title);

enum class Axis { Q, K };

/// Seed-averaged metric against Q or k, one polyline per detector, with an
/// optional shaded detection window on the k axis.
[[nodiscard]] std::string render_line_plot(std::span<const SweepRecord> records, Axis axis, Metric metric,
                                           const std::string& title,
                                           std::optional<graphs::DetectionWindow> band = std::nullopt);

}  // namespace ccd::bench
