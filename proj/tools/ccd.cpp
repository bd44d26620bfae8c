// Command-line front end: simulate, detect, order, sweep, report, replicate.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccd/bench/config.hpp"
#include "ccd/bench/io.hpp"
#include "ccd/bench/presets.hpp"
#include "ccd/bench/registry.hpp"
#include "ccd/bench/report.hpp"
#include "ccd/bench/sweep.hpp"
#include "ccd/detectors.hpp"
#include "ccd/graph_io.hpp"
#include "ccd/sampling.hpp"
#include "ccd/signals.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_params(const std::vector<std::string>& assignments, const std::string& inline_json) {
    json params = inline_json.empty() ? json::object() : json::parse(inline_json);
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects key=value, got '" + a + "'");
        params[a.substr(0, eq)] = json::parse(a.substr(eq + 1));
    }
    return params;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::function<void(std::size_t, std::size_t)> stderr_progress(bool quiet) {
    if (quiet) return {};
    return [](std::size_t done, std::size_t total) {
        if (done == total || done % 50 == 0) std::fprintf(stderr, "\r%zu/%zu cells", done, total);
        if (done == total) std::fprintf(stderr, "\n");
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for time-series causal discovery under varying window length and sampling rate"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate the bivariate benchmark pair as CSV");
    std::string sim_config, sim_out, sim_truth, sim_scenario = "coupled";
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::size_t> sim_T;
    std::size_t sim_k = 1;
    bool sim_anti_alias = false;
    sim->add_option("--config", sim_config, "JSON file holding a DGP spec (same keys as a sweep config's dgp)");
    sim->add_option("--scenario", sim_scenario, "coupled or independent")->check(CLI::IsMember({"coupled", "independent"}));
    sim->add_option("--seed", sim_seed, "Generator seed");
    sim->add_option("-T,--samples", sim_T, "Base-rate sample count");
    sim->add_option("-k,--downsample", sim_k, "Keep every k-th sample")->check(CLI::PositiveNumber);
    sim->add_flag("--anti-alias", sim_anti_alias, "Low-pass before decimating");
    sim->add_option("--out", sim_out, "Output CSV path (default: stdout)");
    sim->add_option("--truth", sim_truth, "Also write the ground-truth graphs as JSON here");

    // detect
    auto* det = app.add_subcommand("detect", "Run one detector on a data file and print the result as JSON");
    std::string det_data, det_name, det_params_json;
    std::vector<std::string> det_params;
    std::size_t det_Q = 1, det_source = 0, det_target = 1;
    std::uint64_t det_seed = 0;
    det->add_option("--data", det_data, "CSV data file")->required()->check(CLI::ExistingFile);
    det->add_option("--detector", det_name, "gc_var, gc_f, te, ccm or var_graph")->required();
    det->add_option("-Q,--window", det_Q, "Window length")->check(CLI::PositiveNumber);
    det->add_option("--source", det_source, "Source series index");
    det->add_option("--target", det_target, "Target series index");
    det->add_option("--param", det_params, "Hyperparameter as key=value (repeatable)");
    det->add_option("--params", det_params_json, "Hyperparameters as a JSON object");
    det->add_option("--seed", det_seed, "Seed for surrogates and library sampling");

    // order
    auto* ord = app.add_subcommand("order", "Select a window length (AIC/BIC) or embedding dimension (FNN)");
    std::string ord_data, ord_criterion = "bic";
    std::size_t ord_target = 1, ord_max = 20;
    ord->add_option("--data", ord_data, "CSV data file")->required()->check(CLI::ExistingFile);
    ord->add_option("--criterion", ord_criterion, "aic, bic or fnn")->check(CLI::IsMember({"aic", "bic", "fnn"}));
    ord->add_option("--target", ord_target, "Series index to model");
    ord->add_option("--max", ord_max, "Largest Q (or E) considered")->check(CLI::PositiveNumber);

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run a sweep configuration");
    std::string sw_config, sw_out, sw_format = "csv";
    std::size_t sw_workers = 0;
    std::optional<std::uint64_t> sw_seed;
    bool sw_timing = false, sw_quiet = false;
    sw->add_option("--config", sw_config, "Sweep configuration JSON")->required()->check(CLI::ExistingFile);
    sw->add_option("--out", sw_out, "Output directory (default: the config's output_dir)");
    sw->add_option("--workers", sw_workers, "Worker threads (default: CCD_WORKERS or hardware concurrency)");
    sw->add_option("--seed", sw_seed, "Override the config seed");
    sw->add_option("--format", sw_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sw->add_flag("--timing", sw_timing, "Record wall time per cell (output is then not byte-reproducible)");
    sw->add_flag("-q,--quiet", sw_quiet, "No progress output");

    // report
    auto* rep = app.add_subcommand("report", "Render SVG figures from a records CSV");
    std::string rep_records, rep_out, rep_metric = "f1";
    std::optional<double> rep_delay;
    rep->add_option("--records", rep_records, "records.csv from a sweep")->required()->check(CLI::ExistingFile);
    rep->add_option("--out", rep_out, "Output directory")->required();
    rep->add_option("--metric", rep_metric, "f1, statistic or decision_rate")
        ->check(CLI::IsMember({"f1", "statistic", "decision_rate"}));
    rep->add_option("--delay", rep_delay, "Coupling delay; marks the detection window on k plots");

    // replicate
    auto* rpl = app.add_subcommand("replicate", "Run a figure preset end to end");
    std::string rpl_preset, rpl_out;
    std::size_t rpl_workers = 0, rpl_seeds = 0;
    std::uint64_t rpl_seed = 0;
    bool rpl_quiet = false;
    rpl->add_option("preset", rpl_preset, "fig_varyQ, fig_varyK, fig_indep_grid or fig_coupled_grid")
        ->required()
        ->check(CLI::IsMember(ccd::bench::preset_names()));
    rpl->add_option("--out", rpl_out, "Output directory (default: the preset name)");
    rpl->add_option("--workers", rpl_workers, "Worker threads");
    rpl->add_option("--seeds", rpl_seeds, "Replicates per cell (default: the preset's)");
    rpl->add_option("--seed", rpl_seed, "Config seed");
    rpl->add_flag("-q,--quiet", rpl_quiet, "No progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            ccd::signals::DgpSpec spec = sim_scenario == "coupled" ? ccd::signals::default_coupled_spec()
                                                                   : ccd::signals::default_independent_spec();
            if (!sim_config.empty()) {
                std::ifstream in(sim_config);
                if (!in) throw std::runtime_error("cannot open " + sim_config);
                spec = ccd::bench::dgp_from_json(json::parse(in));
                if (sim_scenario == "independent") spec.coupling_taps.clear();
            }
            if (sim_seed) spec.seed = *sim_seed;
            if (sim_T) spec.n_samples = *sim_T;
            const auto [raw, truth] = ccd::signals::generate_pair(spec);
            const auto data = ccd::sampling::downsample(raw, {sim_k, sim_anti_alias, 0});
            if (sim_out.empty()) {
                ccd::bench::write_signal_csv(std::cout, data);
            } else {
                std::ostringstream os;
                ccd::bench::write_signal_csv(os, data);
                write_file(sim_out, os.str());
            }
            if (!sim_truth.empty()) write_file(sim_truth, ccd::bench::ground_truth_to_json(truth).dump(2) + "\n");
            return 0;
        }

        if (*det) {
            const auto data = ccd::bench::read_signal_csv(fs::path(det_data));
            const json params = parse_params(det_params, det_params_json);
            if (!ccd::bench::is_registered(det_name)) throw ccd::bench::ConfigError("unknown detector '" + det_name + "'");
            if (auto reason = ccd::bench::infeasibility(det_name, data.length(), data.dims(), det_Q, params)) {
                throw std::invalid_argument(*reason);
            }
            json out;
            if (det_name == "var_graph") {
                const auto p = ccd::bench::resolved_params(det_name, params);
                const auto graph = ccd::detect::var_window_graph(data, det_Q, p.at("ridge").get<double>(),
                                                                 p.at("edge_threshold").get<double>());
                json g;
                ccd::graphs::to_json(g, graph);
                out = ccd::bench::detector_result_to_json(
                    ccd::bench::run_pair(det_name, data, det_source, det_target, det_Q, params, det_seed));
                out["window_graph"] = g;
            } else {
                out = ccd::bench::detector_result_to_json(
                    ccd::bench::run_pair(det_name, data, det_source, det_target, det_Q, params, det_seed));
            }
            out["detector"] = det_name;
            out["Q"] = det_Q;
            out["params"] = ccd::bench::resolved_params(det_name, params);
            std::cout << out.dump(2) << '\n';
            return 0;
        }

        if (*ord) {
            const auto data = ccd::bench::read_signal_csv(fs::path(ord_data));
            if (ord_target >= data.dims()) throw std::invalid_argument("--target out of range");
            json out;
            if (ord_criterion == "fnn") {
                const auto r = ccd::detect::false_nearest_neighbors(data.series(ord_target), ord_max);
                out = {{"criterion", "fnn"}, {"selected", r.selected_E}, {"found", r.found}, {"fractions", r.fractions}};
            } else {
                const auto crit =
                    ord_criterion == "aic" ? ccd::detect::InformationCriterion::AIC : ccd::detect::InformationCriterion::BIC;
                const auto r = ccd::detect::select_order_ic(data, ord_target, ord_max, crit);
                out = {{"criterion", ord_criterion}, {"selected", r.selected}, {"scores", r.scores}};
            }
            std::cout << out.dump(2) << '\n';
            return 0;
        }

        if (*sw) {
            auto config = ccd::bench::load_config(sw_config);
            if (sw_seed) config.dgp.seed = *sw_seed;
            const fs::path out_dir = sw_out.empty() ? fs::path(config.output_dir) : fs::path(sw_out);
            ccd::bench::SweepOptions opts;
            opts.workers = ccd::bench::resolve_workers(sw_workers);
            opts.record_timing = sw_timing;
            opts.progress = stderr_progress(sw_quiet);
            const auto records = ccd::bench::run_sweep(config, opts);
            fs::create_directories(out_dir);
            write_file(out_dir / "config.json", ccd::bench::config_to_json(config).dump(2) + "\n");
            if (sw_format == "csv") {
                std::ostringstream os;
                ccd::bench::write_records_csv(os, records);
                write_file(out_dir / "records.csv", os.str());
                std::cout << (out_dir / "records.csv").string() << '\n';
            } else {
                write_file(out_dir / "records.json", ccd::bench::records_to_json(records).dump(2) + "\n");
                std::cout << (out_dir / "records.json").string() << '\n';
            }
            return 0;
        }

        if (*rep) {
            std::ifstream in(rep_records);
            const auto records = ccd::bench::read_records_csv(in);
            const auto paths = ccd::bench::write_figures(records, rep_out, ccd::bench::metric_from_string(rep_metric),
                                                         rep_delay);
            for (const auto& p : paths) std::cout << p.string() << '\n';
            return 0;
        }

        if (*rpl) {
            ccd::bench::ReplicateOptions opts;
            opts.n_seeds = rpl_seeds;
            opts.config_seed = rpl_seed;
            opts.sweep.workers = ccd::bench::resolve_workers(rpl_workers);
            opts.sweep.progress = stderr_progress(rpl_quiet);
            const auto paths = ccd::bench::replicate(rpl_preset, rpl_out.empty() ? fs::path(rpl_preset) : fs::path(rpl_out), opts);
            for (const auto& p : paths) std::cout << p.string() << '\n';
            return 0;
        }
    } catch (const ccd::bench::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
