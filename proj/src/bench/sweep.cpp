#include "ccd/bench/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ccd/bench/registry.hpp"
#include "ccd/graphs.hpp"
#include "ccd/random.hpp"
#include "ccd/sampling.hpp"

namespace ccd::bench {

namespace {

constexpr std::uint64_t kDetectorStream = 0xD;

struct CellIndex {
    std::size_t detector;
    std::size_t q;
    std::size_t k;
    std::size_t seed;
};

SweepRecord skipped_record(const std::string& detector, std::size_t Q, std::size_t k, std::uint64_t seed,
                           std::string reason) {
    SweepRecord r;
    r.detector = detector;
    r.Q = Q;
    r.k = k;
    r.seed = seed;
    r.statistic = std::numeric_limits<double>::quiet_NaN();
    r.threshold = std::numeric_limits<double>::quiet_NaN();
    r.skipped = std::move(reason);
    return r;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t config_seed, const std::string& detector, std::size_t Q, std::size_t k,
                        std::uint64_t replicate) {
    std::uint64_t h = splitmix64_mix(config_seed);
    h = derive_seed(h, fnv1a64(detector));
    h = derive_seed(h, Q);
    h = derive_seed(h, k);
    return derive_seed(h, replicate);
}

SweepRecord run_cell(const SweepConfig& config, const DetectorSpec& detector, std::size_t Q, std::size_t k,
                     std::uint64_t replicate, bool record_timing) {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        if (!record_timing) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    signals::DgpSpec spec = config.effective_dgp();
    const std::size_t T = spec.n_samples;
    if (k > T) return skipped_record(detector.name, Q, k, replicate, "k exceeds series length");
    const std::size_t T_new = sampling::decimated_length(T, k);
    if (auto reason = infeasibility(detector.name, T_new, 2, Q, detector.params)) {
        return skipped_record(detector.name, Q, k, replicate, *reason);
    }

    spec.seed = cell_seed(config.dgp.seed, detector.name, Q, k, replicate);
    try {
        const auto [raw, truth] = signals::generate_pair(spec);
        const auto data = sampling::downsample(raw, {k, config.anti_alias, 0});
        // Scoring is at summary level, which downsampling does not change.
        const auto outcome = run_detector(detector.name, data, Q, detector.params, derive_seed(spec.seed, kDetectorStream));
        const auto m = graphs::score(outcome.predicted, truth.summary);

        SweepRecord r;
        r.detector = detector.name;
        r.Q = Q;
        r.k = k;
        r.seed = replicate;
        r.statistic = outcome.statistic;
        r.threshold = outcome.threshold;
        r.decision = outcome.decision;
        r.tp = m.tp;
        r.fp = m.fp;
        r.fn = m.fn;
        r.precision = m.precision;
        r.recall = m.recall;
        r.f1 = m.f1;
        r.wall_time_ms = elapsed_ms();
        return r;
    } catch (const std::exception& e) {
        auto r = skipped_record(detector.name, Q, k, replicate, std::string("error: ") + e.what());
        r.wall_time_ms = elapsed_ms();
        return r;
    }
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config, const SweepOptions& options) {
    config.validate();
    std::vector<CellIndex> cells;
    for (std::size_t d = 0; d < config.detectors.size(); ++d)
        for (std::size_t q = 0; q < config.q_values.size(); ++q)
            for (std::size_t k = 0; k < config.k_values.size(); ++k)
                for (std::size_t s = 0; s < config.seeds.size(); ++s) cells.push_back({d, q, k, s});

    std::vector<SweepRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
            const auto& c = cells[i];
            records[i] = run_cell(config, config.detectors[c.detector], config.q_values[c.q], config.k_values[c.k],
                                  config.seeds[c.seed], options.record_timing);
            const std::size_t finished = done.fetch_add(1) + 1;
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(finished, cells.size());
            }
        }
    };

    const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(cells.size(), 1));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    return records;
}

std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CCD_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ccd::bench
