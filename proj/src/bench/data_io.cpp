#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ccd/bench/io.hpp"
#include "ccd/graph_io.hpp"

namespace ccd::bench {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Round-trip precision for sample values.
std::string format_sample(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_signal_csv(std::ostream& os, const signals::SignalSet& s) {
    os << "# tau=" << format_real(s.sampling_period()) << '\n';
    for (std::size_t i = 0; i < s.dims(); ++i) os << (i ? "," : "") << s.labels()[i];
    os << '\n';
    for (std::size_t t = 0; t < s.length(); ++t) {
        for (std::size_t i = 0; i < s.dims(); ++i) {
            os << (i ? "," : "") << format_sample(s.data()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)));
        }
        os << '\n';
    }
}

signals::SignalSet read_signal_csv(std::istream& is) {
    double tau = 1.0;
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            const auto pos = t.find("tau=");
            if (pos != std::string::npos) {
                try {
                    tau = std::stod(t.substr(pos + 4));
                } catch (const std::exception&) {
                    throw std::invalid_argument("signal csv: bad tau comment on line " + std::to_string(line_no));
                }
            }
            continue;
        }
        const auto fields = split(t);
        if (header.empty()) {
            header = fields;
            columns.resize(header.size());
            continue;
        }
        if (fields.size() != header.size()) {
            throw std::invalid_argument("signal csv: wrong field count on line " + std::to_string(line_no));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(fields[i], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != fields[i].size() || fields[i].empty()) {
                throw std::invalid_argument("signal csv: bad number on line " + std::to_string(line_no));
            }
            columns[i].push_back(v);
        }
    }
    if (header.empty() || columns.front().empty()) throw std::invalid_argument("signal csv: no data rows");
    return {columns, tau, header};
}

signals::SignalSet read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open data file " + path.string());
    return read_signal_csv(in);
}

nlohmann::json ground_truth_to_json(const signals::GroundTruth& truth) {
    nlohmann::json summary;
    nlohmann::json window;
    graphs::to_json(summary, truth.summary);
    graphs::to_json(window, truth.window);
    return {{"summary", summary}, {"window", window}, {"effective_delay", truth.effective_delay}};
}

}  // namespace ccd::bench
