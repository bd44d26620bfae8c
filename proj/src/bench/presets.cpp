#include "ccd/bench/presets.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ccd/bench/io.hpp"
#include "ccd/bench/registry.hpp"

namespace ccd::bench {

namespace {

std::vector<std::uint64_t> seed_range(std::size_t n) {
    std::vector<std::uint64_t> seeds(n);
    std::iota(seeds.begin(), seeds.end(), std::uint64_t{0});
    return seeds;
}

std::vector<DetectorSpec> named(std::initializer_list<const char*> names) {
    std::vector<DetectorSpec> out;
    for (const char* n : names) out.push_back({n, resolved_params(n, nlohmann::json::object())});
    return out;
}

std::vector<DetectorSpec> all_detectors() {
    std::vector<DetectorSpec> out;
    for (const auto& n : detector_names()) out.push_back({n, resolved_params(n, nlohmann::json::object())});
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig_varyQ", "fig_varyK", "fig_indep_grid", "fig_coupled_grid"};
    return names;
}

SweepConfig preset_config(const std::string& preset, std::size_t n_seeds, std::uint64_t config_seed) {
    SweepConfig c;
    c.dgp = signals::default_coupled_spec();
    c.dgp.seed = config_seed;
    c.output_dir = preset;
    if (preset == "fig_varyQ") {
        c.detectors = named({"gc_var", "gc_f", "te"});
        c.q_values = {1, 2, 5, 10, 20, 30, 40, 50, 60, 80, 100};
        c.k_values = {1};
        c.seeds = seed_range(n_seeds ? n_seeds : 20);
    } else if (preset == "fig_varyK") {
        c.detectors = named({"gc_var"});
        c.q_values = {5};
        c.k_values = {1, 2, 5, 10, 15, 20, 30, 40, 50, 60, 80};
        c.seeds = seed_range(n_seeds ? n_seeds : 20);
    } else if (preset == "fig_indep_grid" || preset == "fig_coupled_grid") {
        c.scenario = preset == "fig_indep_grid" ? Scenario::Independent : Scenario::Coupled;
        c.detectors = all_detectors();
        c.q_values = {1, 2, 5, 10, 20, 50, 60};
        c.k_values = {1, 2, 5, 10, 20, 50};
        c.seeds = seed_range(n_seeds ? n_seeds : 10);
    } else {
        throw ConfigError("unknown preset '" + preset + "'");
    }
    c.validate();
    return c;
}

std::vector<std::filesystem::path> write_figures(const std::vector<SweepRecord>& records,
                                                 const std::filesystem::path& out_dir, Metric metric,
                                                 std::optional<double> delay) {
    std::filesystem::create_directories(out_dir);
    std::set<std::size_t> qs, ks;
    std::vector<std::string> detectors;
    for (const auto& r : records) {
        qs.insert(r.Q);
        ks.insert(r.k);
        if (std::find(detectors.begin(), detectors.end(), r.detector) == detectors.end()) {
            detectors.push_back(r.detector);
        }
    }
    std::vector<std::filesystem::path> written;
    const std::string m = to_string(metric);
    if (records.empty()) return written;

    if (ks.size() == 1) {
        const auto path = out_dir / ("vary_Q_" + m + ".svg");
        write_text(path, render_line_plot(records, Axis::Q, metric, "Mean " + m + " vs window length Q (k = " +
                                                                          std::to_string(*ks.begin()) + ")"));
        written.push_back(path);
    }
    if (qs.size() == 1 && ks.size() > 1) {
        std::optional<graphs::DetectionWindow> band;
        if (delay) band = graphs::detection_window(*delay, *qs.begin());
        const auto path = out_dir / ("vary_k_" + m + ".svg");
        write_text(path, render_line_plot(records, Axis::K, metric,
                                          "Mean " + m + " vs downsampling factor k (Q = " +
                                              std::to_string(*qs.begin()) + ")",
                                          band));
        written.push_back(path);
    }
    if (qs.size() > 1 && ks.size() > 1) {
        for (const auto& det : detectors) {
            std::vector<SweepRecord> subset;
            for (const auto& r : records)
                if (r.detector == det) subset.push_back(r);
            const auto path = out_dir / ("heatmap_" + det + "_" + m + ".svg");
            write_text(path, render_heatmap(subset, metric, "Mean " + m + " over (Q, k)"));
            written.push_back(path);
        }
    }
    return written;
}

std::vector<std::filesystem::path> replicate(const std::string& preset, const std::filesystem::path& out_dir,
                                             const ReplicateOptions& options) {
    const SweepConfig config = preset_config(preset, options.n_seeds, options.config_seed);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;

    const auto config_path = out_dir / "config.json";
    write_text(config_path, config_to_json(config).dump(2) + "\n");
    written.push_back(config_path);

    const auto records = run_sweep(config, options.sweep);
    const auto csv_path = out_dir / "records.csv";
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + csv_path.string());
        write_records_csv(out, records);
    }
    written.push_back(csv_path);

    std::optional<double> delay;
    const auto dgp = config.effective_dgp();
    if (!dgp.coupling_taps.empty()) delay = signals::group_delay_at_dc(dgp.coupling_taps);
    const Metric metric = preset == "fig_varyQ" ? Metric::DecisionRate : Metric::F1;
    for (auto& p : write_figures(records, out_dir, metric, delay)) written.push_back(std::move(p));
    return written;
}

}  // namespace ccd::bench
