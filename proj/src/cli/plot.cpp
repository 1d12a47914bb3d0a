#include "gauge_rabi/cli/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "gauge_rabi/error.hpp"

namespace gauge_rabi::cli {

std::size_t CsvData::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw data_error("missing_column", "CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi > lo) return;
        const double d = lo == 0.0 ? 0.5 : 0.5 * std::abs(lo);
        lo -= d;
        hi += d;
    }
};

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

}  // namespace

CsvData parse_csv(const std::string& text) {
    CsvData d;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (header) {
            d.columns = std::move(cells);
            header = false;
            continue;
        }
        if (cells.size() != d.columns.size()) {
            throw data_error("csv_shape", "CSV line " + std::to_string(lineno) + " has " +
                                              std::to_string(cells.size()) + " cells, header has " +
                                              std::to_string(d.columns.size()));
        }
        d.rows.push_back(std::move(cells));
    }
    if (header) throw data_error("empty_csv", "CSV has no header row");
    return d;
}

std::string render_svg(const CsvData& csv, const PlotSpec& spec) {
    if (csv.rows.empty()) throw data_error("empty_csv", "CSV has no data rows");
    const std::size_t xi = csv.column(spec.x);
    std::vector<std::string> ys = spec.y;
    if (ys.empty()) {
        for (const auto& c : csv.columns) {
            if (c != spec.x && c != "status") ys.push_back(c);
        }
    }
    if (ys.empty()) throw data_error("missing_column", "no y columns to plot");
    std::vector<std::size_t> yi;
    for (const auto& y : ys) yi.push_back(csv.column(y));

    // Finite (x, y) points per series.
    std::vector<std::vector<std::pair<double, double>>> series(ys.size());
    Range xr, yr;
    for (const auto& row : csv.rows) {
        const auto x = parse_number(row[xi]);
        if (!x) continue;
        for (std::size_t s = 0; s < ys.size(); ++s) {
            const auto y = parse_number(row[yi[s]]);
            if (!y) continue;
            series[s].emplace_back(*x, *y);
            xr.add(*x);
            yr.add(*y);
        }
    }
    if (!(xr.lo <= xr.hi)) throw data_error("no_data", "no finite points to plot");
    xr.pad();
    yr.pad();

    const double W = 720, H = 440, left = 80, right = 170, top = 40, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" "
         "viewBox=\"0 0 720 440\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"440\" fill=\"white\"/>\n";
    if (!spec.title.empty()) {
        s += "<text x=\"" + fmt("%.1f", left + pw / 2) +
             "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + escape(spec.title) +
             "</text>\n";
    }
    // Axes box and ticks.
    s += "<rect x=\"" + fmt("%.1f", left) + "\" y=\"" + fmt("%.1f", top) + "\" width=\"" +
         fmt("%.1f", pw) + "\" height=\"" + fmt("%.1f", ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        const std::string X = fmt("%.2f", px(fx)), Y = fmt("%.2f", py(fy));
        s += "<line x1=\"" + X + "\" y1=\"" + fmt("%.2f", top + ph) + "\" x2=\"" + X + "\" y2=\"" +
             fmt("%.2f", top + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + X + "\" y=\"" + fmt("%.2f", top + ph + 18) +
             "\" text-anchor=\"middle\">" + fmt("%.4g", fx) + "</text>\n";
        s += "<line x1=\"" + fmt("%.2f", left - 5) + "\" y1=\"" + Y + "\" x2=\"" +
             fmt("%.2f", left) + "\" y2=\"" + Y + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt("%.2f", left - 8) + "\" y=\"" + fmt("%.2f", py(fy) + 4) +
             "\" text-anchor=\"end\">" + fmt("%.4g", fy) + "</text>\n";
    }
    s += "<text x=\"" + fmt("%.1f", left + pw / 2) + "\" y=\"" + fmt("%.1f", H - 15) +
         "\" text-anchor=\"middle\">" + escape(spec.x) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % kPalette.size()];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[k].size(); ++i) {
            if (i) s += ' ';
            s += fmt("%.2f", px(series[k][i].first)) + "," + fmt("%.2f", py(series[k][i].second));
        }
        s += "\"/>\n";
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        const double lx = left + pw + 15;
        s += "<line x1=\"" + fmt("%.1f", lx) + "\" y1=\"" + fmt("%.1f", ly) + "\" x2=\"" +
             fmt("%.1f", lx + 20) + "\" y2=\"" + fmt("%.1f", ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
        s += "<text x=\"" + fmt("%.1f", lx + 26) + "\" y=\"" + fmt("%.1f", ly + 4) + "\">" +
             escape(ys[k]) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace gauge_rabi::cli
