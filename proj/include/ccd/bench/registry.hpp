#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccd/detectors.hpp"
#include "ccd/graphs.hpp"
#include "ccd/signals.hpp"

namespace ccd::bench {

/// What one detector produced on one grid cell.
///
/// statistic / threshold / decision describe the x -> y pair (series 0 -> 1);
/// `predicted` covers every ordered pair.
struct CellOutcome {
    graphs::SummaryGraph predicted{2};
    double statistic = 0.0;
    double threshold = 0.0;
    bool decision = false;
};

/// Registered names: gc_var, gc_f, te, ccm, var_graph.
[[nodiscard]] const std::vector<std::string>& detector_names();
[[nodiscard]] bool is_registered(const std::string& name);

/// Throws ConfigError for unknown keys or values of the wrong type/range.
void validate_detector_params(const std::string& name, const nlohmann::json& params);

/// Hyperparameters with defaults filled in.
[[nodiscard]] nlohmann::json resolved_params(const std::string& name, const nlohmann::json& params);

/// Reason the detector cannot run with window Q on D series of length T, if any.
[[nodiscard]] std::optional<std::string> infeasibility(const std::string& name, std::size_t T, std::size_t D,
                                                       std::size_t Q, const nlohmann::json& params);

/// Test a single ordered pair source -> target. For var_graph the whole VAR
/// is fitted and the statistic is the largest |coefficient| over lags 1..Q.
[[nodiscard]] detect::DetectorResult run_pair(const std::string& name, const signals::SignalSet& s,
                                              std::size_t source, std::size_t target, std::size_t Q,
                                              const nlohmann::json& params, std::uint64_t seed);

/// Run the detector over all ordered pairs of `s`.
[[nodiscard]] CellOutcome run_detector(const std::string& name, const signals::SignalSet& s, std::size_t Q,
                                       const nlohmann::json& params, std::uint64_t seed);

}  // namespace ccd::bench
