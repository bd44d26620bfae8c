#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccd/bench/config.hpp"

namespace ccd::bench {

/// One (detector, Q, k, seed) grid cell, scored at summary-graph level.
/// A non-empty `skipped` holds the reason the cell did not run; the numeric
/// fields are then meaningless and are written empty.
struct SweepRecord {
    std::string detector;
    std::size_t Q = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    bool decision = false;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double wall_time_ms = 0.0;
    std::string skipped;

    [[nodiscard]] bool was_skipped() const noexcept { return !skipped.empty(); }
};

struct SweepOptions {
    std::size_t workers = 1;
    /// Wall time is nondeterministic; off keeps the CSV byte-stable (column written as 0).
    bool record_timing = false;
    /// Called after each finished cell with (done, total). May run on worker threads.
    std::function<void(std::size_t, std::size_t)> progress;
};

/// Seed of a grid cell: a hash of the config seed, detector name, Q, k and
/// replicate seed, so editing one grid axis never perturbs other cells.
[[nodiscard]] std::uint64_t cell_seed(std::uint64_t config_seed, const std::string& detector, std::size_t Q,
                                      std::size_t k, std::uint64_t replicate);

/// Evaluate a single cell (used by run_sweep; exposed for tests and the CLI).
[[nodiscard]] SweepRecord run_cell(const SweepConfig& config, const DetectorSpec& detector, std::size_t Q,
                                   std::size_t k, std::uint64_t replicate, bool record_timing = false);

/// Full grid in (detector, Q, k, seed) config order, independent of worker count.
[[nodiscard]] std::vector<SweepRecord> run_sweep(const SweepConfig& config, const SweepOptions& options = {});

/// Worker count: explicit value if nonzero, else CCD_WORKERS, else hardware concurrency.
[[nodiscard]] std::size_t resolve_workers(std::size_t requested);

}  // namespace ccd::bench
