#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccd/bench/sweep.hpp"
#include "ccd/detectors.hpp"
#include "ccd/signals.hpp"

namespace ccd::bench {

/// Exact CSV header of a records file.
inline constexpr const char* kRecordsHeader =
    "detector,Q,k,seed,statistic,threshold,decision,tp,fp,fn,precision,recall,f1,wall_time_ms,skipped";

/// Nine significant digits, '.' separator, "inf"/"-inf"/"nan" for non-finite values.
[[nodiscard]] std::string format_real(double v);

void write_records_csv(std::ostream& os, const std::vector<SweepRecord>& records);
[[nodiscard]] std::vector<SweepRecord> read_records_csv(std::istream& is);
[[nodiscard]] nlohmann::json records_to_json(const std::vector<SweepRecord>& records);

// Signal files: optional "# tau=<real>" comment line, a header row with one
// name per series, then one row per time step.
void write_signal_csv(std::ostream& os, const signals::SignalSet& s);
[[nodiscard]] signals::SignalSet read_signal_csv(std::istream& is);
[[nodiscard]] signals::SignalSet read_signal_csv(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json detector_result_to_json(const detect::DetectorResult& r);
[[nodiscard]] nlohmann::json ccm_result_to_json(const detect::CcmResult& r);
[[nodiscard]] nlohmann::json ground_truth_to_json(const signals::GroundTruth& truth);

}  // namespace ccd::bench
