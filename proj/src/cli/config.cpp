#include "gauge_rabi/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "gauge_rabi/error.hpp"

namespace gauge_rabi::cli {

using schrodinger1d::Grid1D;
using schrodinger1d::PotentialSpec;
using schrodinger1d::TlsParams;

std::string to_string(Units u) { return u == Units::natural ? "natural" : "absolute"; }

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw config_error("schema", "config: " + path + ": " + msg);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (const char* allowed : keys) known = known || k == allowed;
        if (!known) fail(path.empty() ? k : path + "." + k, "unknown key");
    }
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

std::size_t count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

bool flag(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
}

template <class T, class F>
void optional_field(const json& obj, const std::string& path, const char* key, T& out, F conv) {
    if (auto it = obj.find(key); it != obj.end()) out = conv(*it, join(path, key));
}

std::vector<std::pair<double, double>> pairs(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of [x, y] pairs");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) fail(p, "expected [x, y]");
        out.emplace_back(number(v[i][0], p), number(v[i][1], p));
    }
    return out;
}

// Either an explicit list or {"start", "stop", "count"} (inclusive, evenly spaced).
std::vector<double> value_grid(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
        }
    } else if (v.is_object()) {
        only_keys(v, path, {"start", "stop", "count"});
        for (const char* k : {"start", "stop", "count"}) {
            if (!v.contains(k)) fail(join(path, k), "required");
        }
        const double a = number(v["start"], join(path, "start"));
        const double b = number(v["stop"], join(path, "stop"));
        const std::size_t n = count(v["count"], join(path, "count"));
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
        }
    } else {
        fail(path, "expected an array or {start, stop, count}");
    }
    if (out.empty()) fail(path, "grid is empty");
    return out;
}

template <class Fn>
auto wrap_kind(Fn fn, const json& v, const std::string& path) {
    const std::string s = text(v, path);
    try {
        return fn(s);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

PotentialSpec parse_potential(const json& v, const std::string& path) {
    only_keys(v, path, {"kind", "V0", "x0", "tilt", "omega", "m", "q", "samples"});
    if (!v.contains("kind")) fail(join(path, "kind"), "required");
    PotentialSpec p;
    p.kind = wrap_kind(schrodinger1d::potential_kind_from_string, v["kind"], join(path, "kind"));
    optional_field(v, path, "V0", p.V0, number);
    optional_field(v, path, "x0", p.x0, number);
    optional_field(v, path, "tilt", p.tilt, number);
    optional_field(v, path, "omega", p.omega, number);
    optional_field(v, path, "m", p.m, number);
    optional_field(v, path, "q", p.q, number);
    optional_field(v, path, "samples", p.samples, pairs);
    p.validate();
    return p;
}

Grid1D parse_grid(const json& v, const std::string& path) {
    only_keys(v, path, {"x_min", "x_max", "n"});
    Grid1D g;
    for (const char* k : {"x_min", "x_max", "n"}) {
        if (!v.contains(k)) fail(join(path, k), "required");
    }
    g.x_min = number(v["x_min"], join(path, "x_min"));
    g.x_max = number(v["x_max"], join(path, "x_max"));
    g.n = count(v["n"], join(path, "n"));
    g.validate();
    return g;
}

TlsParams parse_tls(const json& v, const std::string& path) {
    only_keys(v, path, {"delta", "eps", "a", "q", "x_L", "x_R", "mu"});
    TlsParams t;
    if (!v.contains("delta")) fail(join(path, "delta"), "required");
    t.delta = number(v["delta"], join(path, "delta"));
    optional_field(v, path, "eps", t.eps, number);
    optional_field(v, path, "a", t.a, number);
    optional_field(v, path, "q", t.q, number);
    optional_field(v, path, "mu", t.mu, number);
    t.x_L = -t.a / 2;
    t.x_R = t.a / 2;
    optional_field(v, path, "x_L", t.x_L, number);
    if (v.contains("x_L") && !v.contains("x_R")) t.x_R = t.x_L + t.a;
    optional_field(v, path, "x_R", t.x_R, number);
    if (v.contains("x_R") && !v.contains("x_L")) t.x_L = t.x_R - t.a;
    t.t = t.delta / 2;
    t.omega_q = std::hypot(t.delta, t.eps);
    t.validate();
    return t;
}

gauge_models::ModeProfile parse_profile(const json& v, const std::string& path) {
    only_keys(v, path, {"kind", "k", "phi0", "samples"});
    gauge_models::ModeProfile p;
    if (v.contains("kind")) {
        p.kind = wrap_kind(gauge_models::profile_kind_from_string, v["kind"], join(path, "kind"));
    }
    optional_field(v, path, "k", p.k, number);
    optional_field(v, path, "phi0", p.phi0, number);
    optional_field(v, path, "samples", p.samples, pairs);
    return p;
}

ModeEntry parse_mode(const json& v, const std::string& path) {
    only_keys(v, path, {"omega_ph", "fock", "A0", "eta", "profile"});
    ModeEntry m;
    optional_field(v, path, "omega_ph", m.spec.omega_ph, number);
    if (v.contains("fock")) m.spec.fock.n_max = count(v["fock"], join(path, "fock"));
    if (v.contains("profile")) m.spec.profile = parse_profile(v["profile"], join(path, "profile"));
    if (v.contains("A0") && v.contains("eta")) fail(path, "give either A0 or eta, not both");
    optional_field(v, path, "A0", m.spec.profile.amplitude, number);
    if (v.contains("eta")) m.eta = number(v["eta"], join(path, "eta"));
    if (!(m.spec.omega_ph > 0.0)) fail(join(path, "omega_ph"), "must be > 0");
    if (m.spec.fock.n_max < 2) fail(join(path, "fock"), "must be >= 2");
    if (m.spec.profile.kind == gauge_models::ProfileKind::tabulated && m.spec.profile.samples.empty()) {
        fail(join(path, "profile.samples"), "required for tabulated profiles");
    }
    return m;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    only_keys(doc, "", {"units", "potential", "grid", "states", "tls", "modes", "gauge",
                        "dipole_approx", "trig_oversample", "levels", "tolerance", "gauge_check",
                        "cutoff", "sweep", "plot", "output_dir"});
    RunConfig cfg;
    cfg.raw = doc;
    if (doc.contains("units")) {
        const auto u = text(doc["units"], "units");
        if (u == "natural") cfg.units = Units::natural;
        else if (u == "absolute") cfg.units = Units::absolute;
        else fail("units", "expected \"natural\" or \"absolute\"");
    }
    if (doc.contains("potential")) cfg.potential = parse_potential(doc["potential"], "potential");
    if (doc.contains("grid")) cfg.grid = parse_grid(doc["grid"], "grid");
    optional_field(doc, "", "states", cfg.states, count);
    if (cfg.states < 3) fail("states", "must be >= 3");
    if (doc.contains("tls")) cfg.tls = parse_tls(doc["tls"], "tls");
    if (cfg.tls && cfg.potential) fail("tls", "give either tls or potential, not both");
    if (cfg.potential.has_value() != cfg.grid.has_value()) {
        fail(cfg.potential ? "grid" : "potential", "potential and grid go together");
    }
    if (doc.contains("modes")) {
        const auto& ms = doc["modes"];
        if (!ms.is_array() || ms.empty()) fail("modes", "expected a non-empty array");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            cfg.modes.push_back(parse_mode(ms[i], "modes[" + std::to_string(i) + "]"));
        }
    }
    if (doc.contains("gauge")) {
        cfg.gauge = wrap_kind(gauge_models::gauge_from_string, doc["gauge"], "gauge");
    }
    optional_field(doc, "", "dipole_approx", cfg.dipole_approx, flag);
    optional_field(doc, "", "trig_oversample", cfg.trig_oversample, count);
    optional_field(doc, "", "levels", cfg.levels, count);
    if (cfg.levels == 0) fail("levels", "must be >= 1");
    optional_field(doc, "", "tolerance", cfg.tolerance, number);
    if (!(cfg.tolerance > 0.0)) fail("tolerance", "must be > 0");
    if (doc.contains("gauge_check")) {
        const auto& g = doc["gauge_check"];
        only_keys(g, "gauge_check", {"eta_grid"});
        if (!g.contains("eta_grid")) fail("gauge_check.eta_grid", "required");
        cfg.eta_grid = value_grid(g["eta_grid"], "gauge_check.eta_grid");
    }
    if (doc.contains("cutoff")) {
        const auto& c = doc["cutoff"];
        only_keys(c, "cutoff", {"k_min", "k_max", "count"});
        CutoffBlock b;
        optional_field(c, "cutoff", "k_min", b.k_min, number);
        optional_field(c, "cutoff", "k_max", b.k_max, number);
        optional_field(c, "cutoff", "count", b.count, count);
        if (!(b.k_min > 0.0) || b.k_max < b.k_min) fail("cutoff", "need 0 < k_min <= k_max");
        if (b.count == 0) fail("cutoff.count", "must be >= 1");
        cfg.cutoff = b;
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        only_keys(s, "sweep", {"parameter", "metric", "grid"});
        SweepBlock b;
        for (const char* k : {"parameter", "grid"}) {
            if (!s.contains(k)) fail(join("sweep", k), "required");
        }
        b.parameter = wrap_kind(analysis::sweep_param_from_string, s["parameter"], "sweep.parameter");
        if (s.contains("metric")) {
            b.metric = wrap_kind(analysis::sweep_metric_from_string, s["metric"], "sweep.metric");
        }
        b.grid = value_grid(s["grid"], "sweep.grid");
        cfg.sweep = b;
    }
    if (doc.contains("plot")) {
        const auto& p = doc["plot"];
        only_keys(p, "plot", {"csv", "x", "y", "output", "title"});
        PlotBlock b;
        optional_field(p, "plot", "csv", b.csv, text);
        optional_field(p, "plot", "x", b.x, text);
        optional_field(p, "plot", "output", b.output, text);
        optional_field(p, "plot", "title", b.title, text);
        if (p.contains("y")) {
            const auto& y = p["y"];
            if (y.is_string()) {
                b.y.push_back(y.get<std::string>());
            } else if (y.is_array()) {
                for (std::size_t i = 0; i < y.size(); ++i) {
                    b.y.push_back(text(y[i], "plot.y[" + std::to_string(i) + "]"));
                }
            } else {
                fail("plot.y", "expected a column name or a list of names");
            }
        }
        cfg.plot = b;
    }
    optional_field(doc, "", "output_dir", cfg.output_dir, text);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("io", "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
        doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw config_error("parse", "config: malformed JSON in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

TlsParams resolve_tls(const RunConfig& cfg) {
    if (cfg.tls) return *cfg.tls;
    if (!cfg.potential) {
        throw config_error("tls_source", "config: needs a tls block or a potential and grid");
    }
    const auto states = schrodinger1d::solve_bound_states(*cfg.potential, *cfg.grid, cfg.states);
    return schrodinger1d::reduce_to_tls(states, *cfg.potential, *cfg.grid);
}

double energy_unit(const RunConfig& cfg) {
    if (cfg.units == Units::absolute || cfg.modes.empty()) return 1.0;
    return cfg.modes.front().spec.omega_ph;
}

gauge_models::ModelConfig model_config(const RunConfig& cfg, const TlsParams& tls,
                                       std::size_t max_dim) {
    if (cfg.modes.empty()) throw config_error("modes", "config: modes: at least one mode is required");
    const double unit = energy_unit(cfg);
    gauge_models::ModelConfig m;
    m.tls = tls;
    m.tls.delta /= unit;
    m.tls.eps /= unit;
    m.tls.t /= unit;
    m.tls.omega_q /= unit;
    for (const auto& e : cfg.modes) {
        auto spec = e.spec;
        spec.omega_ph /= unit;
        if (e.eta) spec.profile.amplitude = gauge_models::amplitude_for_eta(tls, *e.eta);
        m.modes.push_back(spec);
    }
    m.gauge = cfg.gauge;
    m.dipole_approx = cfg.dipole_approx;
    m.max_dim = max_dim;
    m.trig_oversample = cfg.trig_oversample;
    m.validate();
    return m;
}

}  // namespace gauge_rabi::cli
