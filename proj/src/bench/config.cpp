#include "ccd/bench/config.hpp"

#include <fstream>
#include <set>

#include "ccd/bench/registry.hpp"

namespace ccd::bench {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
T read_as(const json& j, const std::string& key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <typename T>
std::vector<T> read_list(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("config: missing required key '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_array() || v.empty()) throw ConfigError("config." + key + ": expected a nonempty array");
    std::vector<T> out;
    for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<long long>() < 0) {
            throw ConfigError("config." + key + ": entries must be nonnegative integers");
        }
        out.push_back(e.get<T>());
    }
    return out;
}

}  // namespace

std::string to_string(Scenario s) { return s == Scenario::Coupled ? "coupled" : "independent"; }

Scenario scenario_from_string(const std::string& s) {
    if (s == "coupled") return Scenario::Coupled;
    if (s == "independent") return Scenario::Independent;
    throw ConfigError("unknown scenario '" + s + "' (expected coupled or independent)");
}

json dgp_to_json(const signals::DgpSpec& spec) {
    return json{{"source_ar", spec.source_ar},     {"innovation_std", spec.innovation_std},
                {"coupling_taps", spec.coupling_taps}, {"noise_ar", spec.noise_ar},
                {"snr_ratio", spec.snr_ratio},     {"n_samples", spec.n_samples},
                {"burn_in", spec.burn_in},         {"seed", spec.seed}};
}

signals::DgpSpec dgp_from_json(const json& j) {
    const std::string where = "dgp";
    reject_unknown_keys(j, {"source_ar", "innovation_std", "coupling_taps", "coupling", "noise_ar", "snr_ratio",
                            "n_samples", "burn_in", "seed"},
                        where);
    signals::DgpSpec spec = signals::default_coupled_spec();
    if (j.contains("source_ar")) spec.source_ar = read_as<std::vector<double>>(j, "source_ar", where);
    if (j.contains("innovation_std")) spec.innovation_std = read_as<double>(j, "innovation_std", where);
    if (j.contains("noise_ar")) spec.noise_ar = read_as<std::vector<double>>(j, "noise_ar", where);
    if (j.contains("snr_ratio")) spec.snr_ratio = read_as<double>(j, "snr_ratio", where);
    if (j.contains("n_samples")) spec.n_samples = read_as<std::size_t>(j, "n_samples", where);
    if (j.contains("burn_in")) spec.burn_in = read_as<std::size_t>(j, "burn_in", where);
    if (j.contains("seed")) spec.seed = read_as<std::uint64_t>(j, "seed", where);
    if (j.contains("coupling_taps") && j.contains("coupling")) {
        throw ConfigError("dgp: give either coupling_taps or coupling, not both");
    }
    if (j.contains("coupling_taps")) spec.coupling_taps = read_as<std::vector<double>>(j, "coupling_taps", where);
    if (j.contains("coupling")) {
        const auto& c = j.at("coupling");
        reject_unknown_keys(c, {"delay", "half_width"}, "dgp.coupling");
        const auto delay = read_as<std::size_t>(c, "delay", "dgp.coupling");
        const auto half_width = c.contains("half_width") ? read_as<std::size_t>(c, "half_width", "dgp.coupling") : 0;
        try {
            spec.coupling_taps = signals::design_delay_fir(delay, half_width);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("dgp.coupling: ") + e.what());
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

void SweepConfig::validate() const {
    if (detectors.empty()) throw ConfigError("config: no detectors");
    if (q_values.empty() || k_values.empty() || seeds.empty()) throw ConfigError("config: empty grid axis");
    for (auto q : q_values)
        if (q < 1) throw ConfigError("config.q_values: Q must be at least 1");
    for (auto k : k_values)
        if (k < 1) throw ConfigError("config.k_values: k must be at least 1");
    for (const auto& d : detectors) {
        if (!is_registered(d.name)) throw ConfigError("config: unknown detector '" + d.name + "'");
        validate_detector_params(d.name, d.params);
    }
    if (scenario == Scenario::Coupled && dgp.coupling_taps.empty()) {
        throw ConfigError("config: coupled scenario needs coupling taps");
    }
    try {
        dgp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

signals::DgpSpec SweepConfig::effective_dgp() const {
    signals::DgpSpec spec = dgp;
    if (scenario == Scenario::Independent) spec.coupling_taps.clear();
    return spec;
}

SweepConfig config_from_json(const json& j) {
    reject_unknown_keys(j, {"version", "scenario", "dgp", "detectors", "q_values", "k_values", "seeds",
                            "anti_alias", "output_dir"},
                        "config");
    if (!j.contains("version")) throw ConfigError("config: missing 'version'");
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != kConfigVersion) {
        throw ConfigError("config: unsupported version (expected " + std::to_string(kConfigVersion) + ")");
    }
    SweepConfig c;
    if (j.contains("scenario")) c.scenario = scenario_from_string(read_as<std::string>(j, "scenario", "config"));
    if (j.contains("dgp")) c.dgp = dgp_from_json(j.at("dgp"));
    if (!j.contains("detectors") || !j.at("detectors").is_array()) {
        throw ConfigError("config: 'detectors' must be an array");
    }
    for (const auto& d : j.at("detectors")) {
        DetectorSpec spec;
        if (d.is_string()) {
            spec.name = d.get<std::string>();
        } else {
            reject_unknown_keys(d, {"name", "params"}, "config.detectors[]");
            spec.name = read_as<std::string>(d, "name", "config.detectors[]");
            if (d.contains("params")) spec.params = d.at("params");
        }
        c.detectors.push_back(std::move(spec));
    }
    c.q_values = read_list<std::size_t>(j, "q_values");
    c.k_values = read_list<std::size_t>(j, "k_values");
    c.seeds = read_list<std::uint64_t>(j, "seeds");
    if (j.contains("anti_alias")) c.anti_alias = read_as<bool>(j, "anti_alias", "config");
    if (j.contains("output_dir")) c.output_dir = read_as<std::string>(j, "output_dir", "config");
    c.validate();
    return c;
}

json config_to_json(const SweepConfig& c) {
    json dets = json::array();
    for (const auto& d : c.detectors) dets.push_back({{"name", d.name}, {"params", resolved_params(d.name, d.params)}});
    return json{{"version", kConfigVersion},  {"scenario", to_string(c.scenario)}, {"dgp", dgp_to_json(c.dgp)},
                {"detectors", dets},          {"q_values", c.q_values},            {"k_values", c.k_values},
                {"seeds", c.seeds},           {"anti_alias", c.anti_alias},        {"output_dir", c.output_dir}};
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace ccd::bench
