#pragma once

// Minimal CSV reader and a deterministic SVG line plot.

#include <string>
#include <vector>

namespace gauge_rabi::cli {

struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Index of `name`; throws data error "missing_column".
    std::size_t column(const std::string& name) const;
};

// Comma-separated, header row first, no quoting. Ragged rows or a missing
// header are data errors.
CsvData parse_csv(const std::string& text);

struct PlotSpec {
    std::string x;
    std::vector<std::string> y;  // empty: all columns except x and status
    std::string title;
};

// One polyline per y column; cells that do not parse as finite numbers are
// skipped. Data error "empty_csv" without data rows, "missing_column" for an
// unknown column, "no_data" when nothing finite is left to draw.
std::string render_svg(const CsvData& csv, const PlotSpec& spec);

}  // namespace gauge_rabi::cli
