#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccd/bench/config.hpp"
#include "ccd/bench/report.hpp"
#include "ccd/bench/sweep.hpp"

namespace ccd::bench {

/// fig_varyQ, fig_varyK, fig_indep_grid, fig_coupled_grid.
[[nodiscard]] const std::vector<std::string>& preset_names();

/// Sweep configuration of a preset; n_seeds = 0 uses the preset default.
[[nodiscard]] SweepConfig preset_config(const std::string& preset, std::size_t n_seeds = 0,
                                        std::uint64_t config_seed = 0);

struct ReplicateOptions {
    std::size_t n_seeds = 0;
    std::uint64_t config_seed = 0;
    SweepOptions sweep;
};

/// Run a preset and write config.json, records.csv and its SVG figures into
/// out_dir. Returns the paths written.
std::vector<std::filesystem::path> replicate(const std::string& preset, const std::filesystem::path& out_dir,
                                             const ReplicateOptions& options = {});

/// Write the figure set for a records file (used by replicate and `report`).
std::vector<std::filesystem::path> write_figures(const std::vector<SweepRecord>& records,
                                                 const std::filesystem::path& out_dir, Metric metric,
                                                 std::optional<double> delay);

}  // namespace ccd::bench
