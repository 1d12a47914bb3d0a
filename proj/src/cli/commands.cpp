#include "gauge_rabi/cli/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "gauge_rabi/analysis.hpp"
#include "gauge_rabi/cli/config.hpp"
#include "gauge_rabi/cli/plot.hpp"
#include "gauge_rabi/error.hpp"
#include "gauge_rabi/multimode.hpp"
#include "gauge_rabi/schrodinger1d.hpp"

#ifndef GAUGE_RABI_VERSION
#define GAUGE_RABI_VERSION "0.0.0"
#endif

namespace gauge_rabi::cli {

namespace fs = std::filesystem;

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"reduce",   "spectrum", "gauge-check", "cutoff",
                                                   "converge", "sweep",    "plot"};
    return names;
}

namespace {

struct Context {
    Context(const CommandOptions& o, RunConfig c) : opts(o), cfg(std::move(c)) {}

    const CommandOptions& opts;
    RunConfig cfg;
    fs::path out_dir;
    std::size_t max_dim = gauge_models::kDefaultMaxDim;
    std::vector<std::string> outputs;
    std::size_t warnings = 0;
    json summary = json::object();  // printed with --json
    std::vector<std::string> lines;  // printed otherwise
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw data_error("io", "cannot write '" + path.string() + "'");
    f << content;
    f.flush();
    if (!f) throw data_error("io", "failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("io", "cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(Context& ctx, const std::string& name, const std::string& content) {
    write_file(ctx.out_dir / name, content);
    ctx.outputs.push_back(name);
}

json table_json(const analysis::Table& t) {
    json j;
    j["columns"] = t.columns;
    j["rows"] = json::array();
    for (const auto& r : t.rows) {
        json row = json::array();
        for (double v : r) row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        j["rows"].push_back(row);
    }
    if (!t.status.empty()) j["status"] = t.status;
    return j;
}

void emit_table(Context& ctx, const std::string& stem, const analysis::Table& t) {
    emit(ctx, stem + ".csv", analysis::to_csv(t));
    if (ctx.opts.json) {
        const auto j = table_json(t);
        emit(ctx, stem + ".json", j.dump(2) + "\n");
        ctx.summary[stem] = j;
    }
    ctx.warnings += t.error_count();
}

double finite_or_nan(double v) { return std::isfinite(v) ? v : std::nan(""); }

gauge_models::ModelConfig model(const Context& ctx) {
    return model_config(ctx.cfg, resolve_tls(ctx.cfg), ctx.max_dim);
}

void cmd_reduce(Context& ctx) {
    const auto& cfg = ctx.cfg;
    if (!cfg.potential) {
        throw config_error("schema", "config: potential: required by reduce");
    }
    const auto states = schrodinger1d::solve_bound_states(*cfg.potential, *cfg.grid, cfg.states);
    const auto tls = schrodinger1d::reduce_to_tls(states, *cfg.potential, *cfg.grid);
    double eta = 0.0;
    if (!cfg.modes.empty()) {
        const auto& m = cfg.modes.front();
        eta = m.eta ? *m.eta : gauge_models::dipole_eta(tls, m.spec.A0());
    }
    const auto verdict = schrodinger1d::anharmonicity_check(tls, eta);

    json j;
    j["potential"] = schrodinger1d::to_string(cfg.potential->kind);
    j["grid_n"] = cfg.grid->n;
    j["energies"] = json::array();
    for (const auto& s : states) j["energies"].push_back(s.energy);
    j["tls"] = {{"delta", tls.delta}, {"eps", tls.eps},     {"t", tls.t},
                {"a", tls.a},         {"q", tls.q},         {"x_L", tls.x_L},
                {"x_R", tls.x_R},     {"mu", tls.mu},       {"omega_q", tls.omega_q}};
    j["consistency"] = {{"delta_over_2t", tls.delta / (2.0 * tls.t)},
                        {"rel_delta_minus_2t", std::abs(tls.delta - 2.0 * tls.t) / tls.delta}};
    // (E2 - E1) / (E1 - E0): 1 for an equally spaced ladder.
    j["spacing_ratio"] =
        (states[2].energy - states[1].energy) / (states[1].energy - states[0].energy);
    j["validity"] = {{"eta", eta},
                     {"ratio", finite_or_nan(verdict.ratio)},
                     {"verdict", schrodinger1d::to_string(verdict.verdict)}};
    const std::string text = j.dump(2) + "\n";
    emit(ctx, "reduce.json", text);
    ctx.summary["reduce"] = j;
    ctx.lines.push_back(j.dump(2));
}

analysis::Table levels_table(const std::vector<double>& ev) {
    analysis::Table t;
    t.columns = {"level", "energy"};
    for (std::size_t i = 0; i < ev.size(); ++i) t.rows.push_back({double(i), ev[i]});
    return t;
}

void cmd_spectrum(Context& ctx) {
    const auto m = model(ctx);
    const auto r = analysis::spectrum(m, ctx.cfg.levels);
    emit_table(ctx, "spectrum", levels_table(r.eigenvalues));
    ctx.summary["n_used"] = r.n_used;
    std::ostringstream s;
    s << "spectrum: " << r.eigenvalues.size() << " levels at N = " << r.n_used
      << ", E0 = " << r.eigenvalues.front();
    ctx.lines.push_back(s.str());
}

void cmd_converge(Context& ctx) {
    const auto m = model(ctx);
    const auto r = analysis::converge_truncation(m, ctx.cfg.levels, ctx.cfg.tolerance);
    analysis::Table log;
    log.columns = {"n_max", "residual"};
    for (std::size_t i = 0; i < r.n_log.size(); ++i) {
        log.rows.push_back({double(r.n_log[i]), r.residual_log[i]});
    }
    emit_table(ctx, "converge", log);
    emit_table(ctx, "converge_levels", levels_table(r.eigenvalues));
    ctx.summary["converged"] = r.converged;
    ctx.summary["n_used"] = r.n_used;
    ctx.summary["residual"] = finite_or_nan(r.residual);
    std::ostringstream s;
    s << "converge: " << (r.converged ? "converged" : "NOT converged") << " at N = " << r.n_used
      << " after " << r.n_log.size() << " doubling(s), residual " << r.residual;
    ctx.lines.push_back(s.str());
    if (!r.converged) {
        std::ostringstream msg;
        msg << "spectrum did not converge to " << ctx.cfg.tolerance << " below the dimension cap "
            << ctx.max_dim;
        throw numeric_error("not_converged", msg.str());
    }
}

void cmd_gauge_check(Context& ctx) {
    if (ctx.cfg.eta_grid.empty()) {
        throw config_error("schema", "config: gauge_check.eta_grid: required by gauge-check");
    }
    const auto m = model(ctx);
    const auto t = analysis::sweep(m, analysis::SweepParam::eta, ctx.cfg.eta_grid,
                                   analysis::SweepMetric::deviation,
                                   {ctx.cfg.levels, ctx.cfg.tolerance});
    emit_table(ctx, "gauge_check", t);
    double worst = 0.0;
    for (const auto& r : t.rows) {
        if (std::isfinite(r[1])) worst = std::max(worst, r[1]);
    }
    ctx.summary["max_dev_gi"] = worst;
    std::ostringstream s;
    s << "gauge-check: " << t.rows.size() << " points, max gauge-invariant deviation " << worst;
    ctx.lines.push_back(s.str());
}

void cmd_cutoff(Context& ctx) {
    if (!ctx.cfg.cutoff) throw config_error("schema", "config: cutoff: required by cutoff");
    const auto m = model(ctx);
    const auto& base = m.modes.front().profile;
    const auto rows = multimode::cutoff_scan(m.tls, base, ctx.cfg.cutoff->k_min,
                                             ctx.cfg.cutoff->k_max, ctx.cfg.cutoff->count);
    emit(ctx, "cutoff.csv", multimode::cutoff_csv(rows));
    if (ctx.opts.json) {
        analysis::Table t;
        t.columns = {"k", "eta_k"};
        for (const auto& r : rows) t.rows.push_back({r.k, r.eta_k});
        const auto j = table_json(t);
        emit(ctx, "cutoff.json", j.dump(2) + "\n");
        ctx.summary["cutoff"] = j;
    }
    ctx.lines.push_back("cutoff: " + std::to_string(rows.size()) + " wavevectors");
}

void cmd_sweep(Context& ctx) {
    if (!ctx.cfg.sweep) throw config_error("schema", "config: sweep: required by sweep");
    const auto m = model(ctx);
    const auto& sw = *ctx.cfg.sweep;
    const auto t = analysis::sweep(m, sw.parameter, sw.grid, sw.metric,
                                   {ctx.cfg.levels, ctx.cfg.tolerance});
    emit_table(ctx, "sweep", t);
    ctx.lines.push_back("sweep: " + std::to_string(t.rows.size()) + " points over " +
                        analysis::to_string(sw.parameter) + ", metric " +
                        analysis::to_string(sw.metric));
}

void cmd_plot(Context& ctx) {
    PlotBlock p = ctx.cfg.plot.value_or(PlotBlock{});
    if (!ctx.opts.csv.empty()) p.csv = ctx.opts.csv;
    if (!ctx.opts.x.empty()) p.x = ctx.opts.x;
    if (!ctx.opts.y.empty()) p.y = ctx.opts.y;
    if (!ctx.opts.title.empty()) p.title = ctx.opts.title;
    if (p.csv.empty() || p.x.empty()) {
        throw config_error("schema", "plot needs a CSV path and an x column");
    }
    const auto csv = parse_csv(read_file(p.csv));
    const auto svg = render_svg(csv, {p.x, p.y, p.title});
    emit(ctx, p.output, svg);
    ctx.lines.push_back("plot: " + (ctx.out_dir / p.output).string());
}

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(Context& ctx, const std::string& status, double wall, const std::string& started) {
    std::string stem = ctx.opts.command;
    std::replace(stem.begin(), stem.end(), '-', '_');
    json m;
    m["tool"] = "gauge-rabi";
    m["version"] = GAUGE_RABI_VERSION;
    m["command"] = ctx.opts.command;
    m["config_path"] = ctx.opts.config_path;
    m["config"] = ctx.cfg.raw;
    m["units"] = to_string(ctx.cfg.units);
    m["energy_unit"] = energy_unit(ctx.cfg);
    m["max_dim"] = ctx.max_dim;
    m["threads"] = omp_get_max_threads();
    m["outputs"] = ctx.outputs;
    m["warnings"] = ctx.warnings;
    m["status"] = status;
    m["started_at"] = started;
    m["wall_time_s"] = wall;
    write_file(ctx.out_dir / (stem + "_manifest.json"), m.dump(2) + "\n");
}

}  // namespace

int run(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string started = utc_now();
    std::unique_ptr<Context> ctx;
    auto report = [&](const std::string& kind, const std::string& code, const std::string& what) {
        err << "gauge-rabi: error[" << kind << ":" << code << "]: " << what << "\n";
    };
    auto finish_manifest = [&](const std::string& status) {
        if (!ctx || ctx->out_dir.empty()) return;
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        try {
            write_manifest(*ctx, status, wall, started);
        } catch (const Error&) {
            if (status == "ok") throw;
        }
    };
    try {
        const auto& names = command_names();
        if (std::find(names.begin(), names.end(), opts.command) == names.end()) {
            throw config_error("usage", "unknown command '" + opts.command + "'");
        }
        RunConfig cfg;
        if (!opts.config_path.empty()) {
            cfg = load_config(opts.config_path);
        } else if (opts.command != "plot") {
            throw config_error("usage", "--config is required");
        }
        ctx = std::make_unique<Context>(opts, std::move(cfg));
        ctx->max_dim = analysis::max_dim_from_env();
        fs::path dir = opts.out_dir.empty() ? fs::path(ctx->cfg.output_dir) : fs::path(opts.out_dir);
        if (dir.empty()) dir = ".";
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) {
            throw data_error("io", "cannot create output directory '" + dir.string() + "'");
        }
        ctx->out_dir = dir;

        const auto& c = opts.command;
        if (c == "reduce") cmd_reduce(*ctx);
        else if (c == "spectrum") cmd_spectrum(*ctx);
        else if (c == "gauge-check") cmd_gauge_check(*ctx);
        else if (c == "cutoff") cmd_cutoff(*ctx);
        else if (c == "converge") cmd_converge(*ctx);
        else if (c == "sweep") cmd_sweep(*ctx);
        else cmd_plot(*ctx);

        finish_manifest("ok");
        if (opts.json && c != "reduce") {
            json j = ctx->summary;
            j["command"] = c;
            j["outputs"] = ctx->outputs;
            j["warnings"] = ctx->warnings;
            out << j.dump(2) << "\n";
        } else {
            for (const auto& l : ctx->lines) out << l << "\n";
        }
        if (ctx->warnings > 0) {
            err << "gauge-rabi: warning: " << ctx->warnings << " point(s) failed; see the status column\n";
        }
        return 0;
    } catch (const Error& e) {
        const char* kind = e.kind() == ErrorKind::config    ? "config"
                           : e.kind() == ErrorKind::numeric ? "numeric"
                                                            : "data";
        if (ctx) {
            for (const auto& l : ctx->lines) out << l << "\n";
        }
        report(kind, e.code(), e.what());
        try {
            finish_manifest("error:" + e.code());
        } catch (...) {
        }
        return e.exit_code();
    } catch (const fs::filesystem_error& e) {
        report("data", "io", e.what());
        return 4;
    } catch (const std::exception& e) {
        report("numeric", "internal", e.what());
        return 3;
    }
}

}  // namespace gauge_rabi::cli
