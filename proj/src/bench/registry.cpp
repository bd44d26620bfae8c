#include "ccd/bench/registry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ccd/bench/config.hpp"
#include "ccd/detectors.hpp"
#include "ccd/random.hpp"

namespace ccd::bench {

namespace {

using nlohmann::json;

enum class Kind { Real, Count };

struct ParamSpec {
    Kind kind;
    double default_value;
    double min_value;      // inclusive
    bool min_exclusive = false;
    double max_value = std::numeric_limits<double>::infinity();  // exclusive when finite
};

const std::map<std::string, std::map<std::string, ParamSpec>>& schemas() {
    static const std::map<std::string, std::map<std::string, ParamSpec>> table{
        {"gc_var", {{"theta", {Kind::Real, detect::kDefaultTheta, -std::numeric_limits<double>::infinity()}}}},
        {"gc_f", {{"alpha", {Kind::Real, detect::kDefaultAlpha, 0.0, true, 1.0}}}},
        {"te", {{"bins", {Kind::Count, 2, 2}}, {"n_surrogates", {Kind::Count, 19, 0}}}},
        {"ccm",
         {{"E", {Kind::Count, 0, 0}},  // 0: use the window length Q
          {"tau_embed", {Kind::Count, 1, 1}},
          {"n_samples", {Kind::Count, 5, 1}},
          {"max_predictions", {Kind::Count, 300, 0}},
          {"library_max", {Kind::Count, 1000, 4}},
          {"convergence_margin", {Kind::Real, 0.1, 0.0}},
          {"min_skill", {Kind::Real, 0.5, -1.0}}}},
        {"var_graph", {{"ridge", {Kind::Real, 1e-6, 0.0}}, {"edge_threshold", {Kind::Real, 0.1, 0.0, true}}}},
    };
    return table;
}

double get_real(const json& p, const std::string& key) { return p.at(key).get<double>(); }
std::size_t get_count(const json& p, const std::string& key) { return p.at(key).get<std::size_t>(); }

detect::CcmOptions ccm_options(const json& p, std::size_t T, std::size_t Q, std::uint64_t seed) {
    detect::CcmOptions o;
    o.E = get_count(p, "E") == 0 ? Q : get_count(p, "E");
    o.tau_embed = get_count(p, "tau_embed");
    o.n_samples = get_count(p, "n_samples");
    o.max_predictions = get_count(p, "max_predictions");
    o.convergence_margin = get_real(p, "convergence_margin");
    o.min_skill = get_real(p, "min_skill");
    o.seed = seed;
    const std::size_t n_points = detect::ccm_embedded_points(T, o.E, o.tau_embed);
    const std::size_t hi = std::min(n_points, get_count(p, "library_max"));
    const std::size_t lo = std::min(hi, 2 * (o.E + 2));
    for (int i = 0; i < 5; ++i) {
        const auto L = static_cast<std::size_t>(
            std::round(static_cast<double>(lo) * std::pow(static_cast<double>(hi) / static_cast<double>(lo), i / 4.0)));
        if (o.library_sizes.empty() || L > o.library_sizes.back()) o.library_sizes.push_back(L);
    }
    return o;
}

}  // namespace

const std::vector<std::string>& detector_names() {
    static const std::vector<std::string> names{"gc_var", "gc_f", "te", "ccm", "var_graph"};
    return names;
}

bool is_registered(const std::string& name) { return schemas().contains(name); }

void validate_detector_params(const std::string& name, const json& params) {
    const auto it = schemas().find(name);
    if (it == schemas().end()) throw ConfigError("unknown detector '" + name + "'");
    if (!params.is_object()) throw ConfigError(name + ": params must be a JSON object");
    for (const auto& [key, value] : params.items()) {
        const auto spec = it->second.find(key);
        if (spec == it->second.end()) throw ConfigError(name + ": unknown hyperparameter '" + key + "'");
        const ParamSpec& s = spec->second;
        if (s.kind == Kind::Count && !value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
            throw ConfigError(name + "." + key + ": expected a nonnegative integer");
        }
        if (!value.is_number()) throw ConfigError(name + "." + key + ": expected a number");
        const double v = value.get<double>();
        const bool below = s.min_exclusive ? !(v > s.min_value) : !(v >= s.min_value);
        if (below || (std::isfinite(s.max_value) && !(v < s.max_value)) || std::isnan(v)) {
            throw ConfigError(name + "." + key + ": value out of range");
        }
    }
}

json resolved_params(const std::string& name, const json& params) {
    validate_detector_params(name, params);
    json out = json::object();
    for (const auto& [key, spec] : schemas().at(name)) {
        if (params.contains(key)) {
            out[key] = params.at(key);
        } else if (spec.kind == Kind::Count) {
            out[key] = static_cast<std::size_t>(spec.default_value);
        } else {
            out[key] = spec.default_value;
        }
    }
    return out;
}

std::optional<std::string> infeasibility(const std::string& name, std::size_t T, std::size_t D, std::size_t Q,
                                         const json& params) {
    if (D < 2) return "needs at least two series";
    if (name == "gc_var" || name == "gc_f") {
        // The full model has 2Q + 1 regressors on T - Q rows.
        if (T <= 3 * Q + 1) return "series too short: need T > 3Q + 1";
        return std::nullopt;
    }
    if (name == "te") {
        if (T <= Q + 2) return "series too short: need T > Q + 2";
        return std::nullopt;
    }
    if (name == "var_graph") {
        if (T <= (D + 1) * Q + 1) return "series too short: need T > (D + 1)Q + 1";
        return std::nullopt;
    }
    if (name == "ccm") {
        const auto p = resolved_params(name, params);
        const std::size_t E = get_count(p, "E") == 0 ? Q : get_count(p, "E");
        const std::size_t n_points = detect::ccm_embedded_points(T, E, get_count(p, "tau_embed"));
        if (n_points <= 4 * (E + 2)) return "series too short for the CCM embedding";
        return std::nullopt;
    }
    throw ConfigError("unknown detector '" + name + "'");
}

detect::DetectorResult run_pair(const std::string& name, const signals::SignalSet& s, std::size_t source,
                                std::size_t target, std::size_t Q, const json& params, std::uint64_t seed) {
    const json p = resolved_params(name, params);
    if (source >= s.dims() || target >= s.dims() || source == target) {
        throw std::invalid_argument("run_pair: source and target must be distinct series indices");
    }
    const auto x = s.series(source);
    const auto y = s.series(target);
    detect::DetectorResult r;
    if (name == "gc_var") {
        r = detect::gc_variance_reduction(x, y, Q, get_real(p, "theta"));
    } else if (name == "gc_f") {
        r = detect::gc_f_test(x, y, Q, get_real(p, "alpha"));
    } else if (name == "te") {
        r = detect::transfer_entropy(x, y, Q, {get_count(p, "bins"), get_count(p, "n_surrogates"), seed});
    } else if (name == "ccm") {
        const auto c = detect::cross_map(x, y, ccm_options(p, s.length(), Q, seed));
        r.statistic = c.skills.back();
        r.threshold = get_real(p, "min_skill");
        r.decision = c.converged;
        r.diagnostics["E"] = static_cast<double>(c.E);
        r.diagnostics["skill_first"] = c.skills.front();
        r.diagnostics["library_min"] = static_cast<double>(c.library_sizes.front());
        r.diagnostics["library_max"] = static_cast<double>(c.library_sizes.back());
    } else if (name == "var_graph") {
        const auto fit = detect::fit_var(s, Q, get_real(p, "ridge"));
        double strongest = 0.0;
        std::size_t strongest_lag = 0;
        for (std::size_t q = 1; q <= Q; ++q) {
            const double c = std::abs(fit.coefficient(source, target, q));
            if (c > strongest) strongest = c, strongest_lag = q;
        }
        r.statistic = strongest;
        r.threshold = get_real(p, "edge_threshold");
        r.decision = strongest > r.threshold;
        r.diagnostics["strongest_lag"] = static_cast<double>(strongest_lag);
    } else {
        throw ConfigError("unknown detector '" + name + "'");
    }
    r.source = source;
    r.target = target;
    return r;
}

CellOutcome run_detector(const std::string& name, const signals::SignalSet& s, std::size_t Q, const json& params,
                         std::uint64_t seed) {
    const json p = resolved_params(name, params);
    const std::size_t D = s.dims();
    CellOutcome out{graphs::SummaryGraph(D), 0.0, 0.0, false};

    if (name == "var_graph") {
        const double threshold = get_real(p, "edge_threshold");
        const auto fit = detect::fit_var(s, Q, get_real(p, "ridge"));
        double strongest = 0.0;
        for (std::size_t i = 0; i < D; ++i) {
            for (std::size_t j = 0; j < D; ++j) {
                if (i == j) continue;
                bool edge = false;
                for (std::size_t q = 1; q <= Q; ++q) {
                    const double c = std::abs(fit.coefficient(i, j, q));
                    edge = edge || c > threshold;
                    if (i == 0 && j == 1) strongest = std::max(strongest, c);
                }
                out.predicted.set_edge(i, j, edge);
            }
        }
        out.statistic = strongest;
        out.threshold = threshold;
        out.decision = out.predicted.edge(0, 1);
        return out;
    }

    for (std::size_t i = 0; i < D; ++i) {
        for (std::size_t j = 0; j < D; ++j) {
            if (i == j) continue;
            const auto r = run_pair(name, s, i, j, Q, p, derive_seed(seed, i * D + j));
            out.predicted.set_edge(i, j, r.decision);
            if (i == 0 && j == 1) {
                out.statistic = r.statistic;
                out.threshold = r.threshold;
                out.decision = r.decision;
            }
        }
    }
    return out;
}

}  // namespace ccd::bench
