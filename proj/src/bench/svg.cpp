#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ccd/bench/report.hpp"

namespace ccd::bench {

namespace {

struct Rgb {
    double r, g, b;
};

// Viridis anchors.
constexpr std::array<Rgb, 5> kPalette{{
    {68, 1, 84},
    {59, 82, 139},
    {33, 145, 140},
    {94, 201, 98},
    {253, 231, 37},
}};

std::string color_for(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * static_cast<double>(kPalette.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), kPalette.size() - 2);
    const double f = pos - static_cast<double>(i);
    const Rgb& a = kPalette[i];
    const Rgb& b = kPalette[i + 1];
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                  static_cast<int>(std::lround(a.g + f * (b.g - a.g))),
                  static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
    return buf;
}

std::string fmt(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

double metric_value(const SweepRecord& r, Metric m) {
    switch (m) {
        case Metric::F1: return r.f1;
        case Metric::Statistic: return r.statistic;
        case Metric::DecisionRate: return r.decision ? 1.0 : 0.0;
    }
    return 0.0;
}

bool fixed_unit_scale(Metric m) { return m != Metric::Statistic; }

}  // namespace

std::string to_string(Metric m) {
    switch (m) {
        case Metric::F1: return "f1";
        case Metric::Statistic: return "statistic";
        case Metric::DecisionRate: return "decision_rate";
    }
    return "f1";
}

Metric metric_from_string(const std::string& s) {
    if (s == "f1") return Metric::F1;
    if (s == "statistic") return Metric::Statistic;
    if (s == "decision_rate") return Metric::DecisionRate;
    throw std::invalid_argument("unknown metric '" + s + "' (expected f1, statistic or decision_rate)");
}

GridSummary summarize_records(std::span<const SweepRecord> records, Metric metric) {
    GridSummary out;
    std::map<std::tuple<std::string, std::size_t, std::size_t>, double> sums;
    for (const auto& r : records) {
        const auto key = std::make_tuple(r.detector, r.Q, r.k);
        auto& cell = out[key];
        if (r.was_skipped()) continue;
        const double v = metric_value(r, metric);
        if (!std::isfinite(v)) continue;
        sums[key] += v;
        ++cell.count;
    }
    for (auto& [key, cell] : out) {
        if (cell.count > 0) cell.mean = sums[key] / static_cast<double>(cell.count);
    }
    return out;
}

std::string render_heatmap(std::span<const SweepRecord> records, Metric metric, const std::string& title) {
    if (records.empty()) throw std::invalid_argument("render_heatmap: no records");
    std::set<std::string> detectors;
    std::set<std::size_t> qs, ks;
    for (const auto& r : records) {
        detectors.insert(r.detector);
        qs.insert(r.Q);
        ks.insert(r.k);
    }
    if (detectors.size() != 1) throw std::invalid_argument("render_heatmap: records mix several detectors");
    const auto grid = summarize_records(records, metric);
    if (grid.size() != qs.size() * ks.size()) throw std::invalid_argument("render_heatmap: ragged (Q, k) grid");

    double lo = 0.0, hi = 1.0;
    if (!fixed_unit_scale(metric)) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (const auto& [_, c] : grid) {
            if (c.count == 0) continue;
            lo = std::min(lo, c.mean);
            hi = std::max(hi, c.mean);
        }
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi <= lo) hi = lo + 1.0;
    }

    const int cell = 48;
    const int left = 70, top = 50;
    const int width = left + cell * static_cast<int>(ks.size()) + 120;
    const int height = top + cell * static_cast<int>(qs.size()) + 60;
    const std::string& det = *detectors.begin();

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << escape(title) << "</text>\n";
    os << "<text x=\"" << left << "\" y=\"36\">" << escape(det) << ", mean " << to_string(metric) << "</text>\n";

    int row = 0;
    for (auto q = qs.rbegin(); q != qs.rend(); ++q, ++row) {
        const int y = top + row * cell;
        os << "<text x=\"" << left - 6 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"end\">" << *q
           << "</text>\n";
        int col = 0;
        for (auto k = ks.begin(); k != ks.end(); ++k, ++col) {
            const int x = left + col * cell;
            const auto& c = grid.at(std::make_tuple(det, *q, *k));
            if (c.count == 0) {
                os << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
                   << cell << "\" fill=\"#cccccc\"/>\n";
                os << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                   << "\" text-anchor=\"middle\">n/a</text>\n";
                continue;
            }
            const double t = (c.mean - lo) / (hi - lo);
            os << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
               << cell << "\" fill=\"" << color_for(t) << "\"/>\n";
            os << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"middle\" fill=\""
               << (t > 0.6 ? "black" : "white") << "\">" << fmt(c.mean) << "</text>\n";
        }
    }
    int col = 0;
    const int axis_y = top + static_cast<int>(qs.size()) * cell;
    for (auto k = ks.begin(); k != ks.end(); ++k, ++col) {
        os << "<text x=\"" << left + col * cell + cell / 2 << "\" y=\"" << axis_y + 16 << "\" text-anchor=\"middle\">"
           << *k << "</text>\n";
    }
    os << "<text x=\"" << left + static_cast<int>(ks.size()) * cell / 2 << "\" y=\"" << axis_y + 36
       << "\" text-anchor=\"middle\">downsampling factor k</text>\n";
    os << "<text x=\"16\" y=\"" << top + static_cast<int>(qs.size()) * cell / 2
       << "\" transform=\"rotate(-90 16 " << top + static_cast<int>(qs.size()) * cell / 2
       << ")\" text-anchor=\"middle\">window length Q</text>\n";

    // Color bar.
    const int bar_x = left + static_cast<int>(ks.size()) * cell + 30;
    const int bar_h = static_cast<int>(qs.size()) * cell;
    for (int i = 0; i < 10; ++i) {
        const double t = 1.0 - (i + 0.5) / 10.0;
        os << "<rect x=\"" << bar_x << "\" y=\"" << top + i * bar_h / 10 << "\" width=\"16\" height=\""
           << bar_h / 10 + 1 << "\" fill=\"" << color_for(t) << "\"/>\n";
    }
    os << "<text x=\"" << bar_x + 22 << "\" y=\"" << top + 10 << "\">" << fmt(hi) << "</text>\n";
    os << "<text x=\"" << bar_x + 22 << "\" y=\"" << top + bar_h << "\">" << fmt(lo) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_line_plot(std::span<const SweepRecord> records, Axis axis, Metric metric,
                             const std::string& title, std::optional<graphs::DetectionWindow> band) {
    if (records.empty()) throw std::invalid_argument("render_line_plot: no records");
    const auto grid = summarize_records(records, metric);

    // detector -> (x, mean) in ascending x.
    std::map<std::string, std::map<std::size_t, double>> lines;
    std::vector<std::string> order;
    for (const auto& r : records) {
        if (std::find(order.begin(), order.end(), r.detector) == order.end()) order.push_back(r.detector);
    }
    for (const auto& [key, cell] : grid) {
        if (cell.count == 0) continue;
        const auto& [det, q, k] = key;
        lines[det][axis == Axis::Q ? q : k] = cell.mean;
    }

    std::set<std::size_t> xs;
    for (const auto& r : records) xs.insert(axis == Axis::Q ? r.Q : r.k);
    const double x_lo = std::log10(static_cast<double>(std::max<std::size_t>(*xs.begin(), 1)));
    double x_hi = std::log10(static_cast<double>(std::max<std::size_t>(*xs.rbegin(), 1)));
    const bool single_x = x_hi <= x_lo;
    if (single_x) x_hi = x_lo + 1.0;

    double y_lo = 0.0, y_hi = 1.0;
    if (!fixed_unit_scale(metric)) {
        y_lo = 0.0;
        y_hi = 0.0;
        for (const auto& [_, pts] : lines)
            for (const auto& [__, v] : pts) {
                y_lo = std::min(y_lo, v);
                y_hi = std::max(y_hi, v);
            }
        if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    }

    const int left = 70, top = 40, pw = 480, ph = 280;
    auto px = [&](double v) {
        const double lv = std::log10(std::max(v, 1.0));
        return left + (single_x ? 0.5 : (lv - x_lo) / (x_hi - x_lo)) * pw;
    };
    auto py = [&](double v) { return top + ph - (v - y_lo) / (y_hi - y_lo) * ph; };

    static const std::array<const char*, 6> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + pw + 160 << "\" height=\"" << top + ph + 60
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"22\" font-size=\"14\">" << escape(title) << "</text>\n";
    if (band) {
        const double a = std::clamp(px(band->k_min), static_cast<double>(left), static_cast<double>(left + pw));
        const double b = std::clamp(px(band->k_max), static_cast<double>(left), static_cast<double>(left + pw));
        os << "<rect class=\"detection-window\" data-k-min=\"" << fmt(band->k_min, 3) << "\" data-k-max=\""
           << fmt(band->k_max, 3) << "\" x=\"" << fmt(a) << "\" y=\"" << top << "\" width=\"" << fmt(b - a)
           << "\" height=\"" << ph << "\" fill=\"#2ca02c\" fill-opacity=\"0.2\"/>\n";
        os << "<text x=\"" << fmt(a + 4) << "\" y=\"" << top + 14 << "\" fill=\"#2ca02c\">detection window ["
           << fmt(band->k_min, 0) << ", " << fmt(band->k_max, 0) << "]</text>\n";
    }
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t x : xs) {
        os << "<text x=\"" << fmt(px(static_cast<double>(x))) << "\" y=\"" << top + ph + 16
           << "\" text-anchor=\"middle\">" << x << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double v = y_lo + (y_hi - y_lo) * i / 4.0;
        os << "<text x=\"" << left - 6 << "\" y=\"" << fmt(py(v) + 4) << "\" text-anchor=\"end\">" << fmt(v)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << top + ph + 36 << "\" text-anchor=\"middle\">"
       << (axis == Axis::Q ? "window length Q" : "downsampling factor k") << "</text>\n";
    os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 " << top + ph / 2
       << ")\" text-anchor=\"middle\">mean " << to_string(metric) << "</text>\n";

    std::size_t ci = 0;
    for (const auto& det : order) {
        const auto it = lines.find(det);
        const char* color = colors[ci % colors.size()];
        os << "<text x=\"" << left + pw + 12 << "\" y=\"" << top + 14 + 16 * static_cast<int>(ci) << "\" fill=\""
           << color << "\">" << escape(det) << "</text>\n";
        ++ci;
        if (it == lines.end()) continue;
        os << "<polyline class=\"series\" data-detector=\"" << escape(det) << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& [x, v] : it->second) {
            os << (first ? "" : " ") << fmt(px(static_cast<double>(x))) << ',' << fmt(py(v));
            first = false;
        }
        os << "\"/>\n";
        for (const auto& [x, v] : it->second) {
            os << "<circle cx=\"" << fmt(px(static_cast<double>(x))) << "\" cy=\"" << fmt(py(v)) << "\" r=\"3\" fill=\""
               << color << "\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ccd::bench
