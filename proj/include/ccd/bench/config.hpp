#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccd/signals.hpp"

namespace ccd::bench {

/// Raised for malformed or unknown configuration content.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kConfigVersion = 1;

enum class Scenario { Coupled, Independent };

[[nodiscard]] std::string to_string(Scenario s);
[[nodiscard]] Scenario scenario_from_string(const std::string& s);

struct DetectorSpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

struct SweepConfig {
    signals::DgpSpec dgp = signals::default_coupled_spec();
    Scenario scenario = Scenario::Coupled;
    std::vector<DetectorSpec> detectors;
    std::vector<std::size_t> q_values;
    std::vector<std::size_t> k_values;
    std::vector<std::uint64_t> seeds;
    bool anti_alias = false;
    std::string output_dir = "out";

    /// Throws ConfigError on empty grids, unknown detectors or bad hyperparameters.
    void validate() const;

    /// The DGP actually simulated: coupling removed for the independent scenario.
    [[nodiscard]] signals::DgpSpec effective_dgp() const;
};

// DgpSpec JSON keys: source_ar, innovation_std, coupling_taps, noise_ar,
// snr_ratio, n_samples, burn_in, seed. Instead of coupling_taps, a
// {"coupling": {"delay": D, "half_width": H}} shorthand is accepted.
[[nodiscard]] nlohmann::json dgp_to_json(const signals::DgpSpec& spec);
[[nodiscard]] signals::DgpSpec dgp_from_json(const nlohmann::json& j);

/// Unknown keys anywhere in the document are a hard error.
[[nodiscard]] SweepConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json config_to_json(const SweepConfig& config);
[[nodiscard]] SweepConfig load_config(const std::filesystem::path& path);

}  // namespace ccd::bench
