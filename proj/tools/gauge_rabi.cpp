#include <iostream>

#include "CLI11.hpp"
#include "gauge_rabi/cli/commands.hpp"

int main(int argc, char** argv) {
    namespace cli = gauge_rabi::cli;
    CLI::App app{"Gauge-invariant quantum Rabi model toolkit"};
    app.require_subcommand(1);
    cli::CommandOptions opts;

    for (const auto& name : cli::command_names()) {
        auto* sub = app.add_subcommand(name);
        auto* config = sub->add_option("--config", opts.config_path, "JSON run configuration");
        if (name != "plot") config->required();
        sub->add_option("--out", opts.out_dir, "output directory (overrides output_dir)");
        sub->add_flag("--json", opts.json, "write JSON mirrors and print JSON");
        if (name == "plot") {
            sub->add_option("--csv", opts.csv, "input CSV");
            sub->add_option("--x", opts.x, "x column");
            sub->add_option("--y", opts.y, "y column(s)")->delimiter(',');
            sub->add_option("--title", opts.title, "plot title");
        }
        sub->callback([&opts, name] { opts.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return cli::run(opts, std::cout, std::cerr);
}
