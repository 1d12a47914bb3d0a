#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gauge_rabi::cli {

struct CommandOptions {
    std::string command;      // reduce, spectrum, gauge-check, cutoff, converge, sweep, plot
    std::string config_path;  // optional for plot when csv and x are given
    std::string out_dir;      // overrides the config's output_dir; default "."
    bool json = false;        // JSON mirrors of every table, JSON on stdout

    // plot overrides
    std::string csv;
    std::string x;
    std::vector<std::string> y;
    std::string title;
};

const std::vector<std::string>& command_names();

// Runs one command and returns its exit code (0 ok, 2 config, 3 numeric,
// 4 io/data). Diagnostics go to `err` as a single line.
int run(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace gauge_rabi::cli
