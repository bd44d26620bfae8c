#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ccd/bench/io.hpp"

namespace ccd::bench {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_real(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("records: bad number '" + s + "'");
    return v;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_records_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kRecordsHeader << '\n';
    for (const auto& r : records) {
        os << r.detector << ',' << r.Q << ',' << r.k << ',' << r.seed << ',';
        if (r.was_skipped()) {
            os << ",,,,,,,,," << format_real(r.wall_time_ms) << ',' << sanitize(r.skipped) << '\n';
            continue;
        }
        os << format_real(r.statistic) << ',' << format_real(r.threshold) << ',' << (r.decision ? 1 : 0) << ','
           << r.tp << ',' << r.fp << ',' << r.fn << ',' << format_real(r.precision) << ',' << format_real(r.recall)
           << ',' << format_real(r.f1) << ',' << format_real(r.wall_time_ms) << ",\n";
    }
}

std::vector<SweepRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("records: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordsHeader) throw std::invalid_argument("records: unexpected header");
    std::vector<SweepRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 15) throw std::invalid_argument("records: expected 15 fields, got " + std::to_string(f.size()));
        SweepRecord r;
        r.detector = f[0];
        r.Q = std::stoull(f[1]);
        r.k = std::stoull(f[2]);
        r.seed = std::stoull(f[3]);
        r.wall_time_ms = parse_real(f[13]);
        r.skipped = f[14];
        if (!r.was_skipped()) {
            r.statistic = parse_real(f[4]);
            r.threshold = parse_real(f[5]);
            r.decision = f[6] == "1";
            r.tp = std::stoull(f[7]);
            r.fp = std::stoull(f[8]);
            r.fn = std::stoull(f[9]);
            r.precision = parse_real(f[10]);
            r.recall = parse_real(f[11]);
            r.f1 = parse_real(f[12]);
        } else {
            r.statistic = r.threshold = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(std::move(r));
    }
    return out;
}

namespace {
nlohmann::json real_or_null(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}
}  // namespace

nlohmann::json records_to_json(const std::vector<SweepRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json o{{"detector", r.detector}, {"Q", r.Q}, {"k", r.k}, {"seed", r.seed},
                         {"wall_time_ms", r.wall_time_ms}};
        if (r.was_skipped()) {
            o["skipped"] = r.skipped;
        } else {
            o["statistic"] = real_or_null(r.statistic);
            o["threshold"] = real_or_null(r.threshold);
            o["decision"] = r.decision;
            o["tp"] = r.tp;
            o["fp"] = r.fp;
            o["fn"] = r.fn;
            o["precision"] = r.precision;
            o["recall"] = r.recall;
            o["f1"] = r.f1;
            o["skipped"] = nullptr;
        }
        arr.push_back(std::move(o));
    }
    return arr;
}

nlohmann::json detector_result_to_json(const detect::DetectorResult& r) {
    nlohmann::json diag = nlohmann::json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = real_or_null(v);
    return {{"source", r.source},
            {"target", r.target},
            {"statistic", real_or_null(r.statistic)},
            {"threshold", real_or_null(r.threshold)},
            {"decision", r.decision},
            {"diagnostics", diag}};
}

nlohmann::json ccm_result_to_json(const detect::CcmResult& r) {
    return {{"library_sizes", r.library_sizes},
            {"skills", r.skills},
            {"converged", r.converged},
            {"E", r.E},
            {"tau_embed", r.tau_embed}};
}

}  // namespace ccd::bench
