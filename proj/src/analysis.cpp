#include "gauge_rabi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>

#include "gauge_rabi/error.hpp"

namespace gauge_rabi::analysis {

using gauge_models::Gauge;
using gauge_models::ProfileKind;

std::size_t max_dim_from_env(std::size_t fallback) {
    const char* raw = std::getenv("GAUGE_RABI_MAX_DIM");
    if (raw == nullptr || *raw == '\0') return fallback;
    const std::string s(raw);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v < 2 || s.front() == '-') {
        throw config_error("max_dim_env", "GAUGE_RABI_MAX_DIM must be an integer >= 2, got '" +
                                              s + "'");
    }
    return static_cast<std::size_t>(v);
}

numal::ComplexMatrix build_hamiltonian(const ModelConfig& cfg) {
    cfg.validate();
    if (cfg.modes.size() == 1) return gauge_models::build_single_mode(cfg);
    if (cfg.gauge != Gauge::coulomb_gi) {
        throw config_error("gauge_multimode", "several modes are only supported in the " +
                                                  std::string("coulomb_gi gauge"));
    }
    multimode::MultimodeOptions o;
    o.max_dim = cfg.max_dim;
    o.dipole_approx = cfg.dipole_approx;
    return multimode::h_multimode_gi(cfg.tls, cfg.modes, o);
}

namespace {

std::size_t largest_fock(const ModelConfig& cfg) {
    std::size_t n = 0;
    for (const auto& m : cfg.modes) n = std::max(n, m.fock.n_max);
    return n;
}

double max_level_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

// Runs fn(i) for i in [0, n) concurrently; the first exception in index
// order is rethrown after all points finish.
template <class Fn>
void parallel_points(std::size_t n, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

SpectrumResult spectrum(const ModelConfig& cfg, std::size_t k) {
    const auto h = build_hamiltonian(cfg);
    if (k == 0 || k > h.dim()) {
        throw config_error("state_count", "requested " + std::to_string(k) +
                                              " levels from a space of dimension " +
                                              std::to_string(h.dim()));
    }
    auto ev = numal::eigvalsh(h);
    ev.resize(k);
    SpectrumResult r;
    r.eigenvalues = std::move(ev);
    r.n_used = largest_fock(cfg);
    return r;
}

SpectrumResult converge_truncation(const ModelConfig& cfg, std::size_t k, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw config_error("tolerance", "convergence tolerance must be finite and > 0");
    }
    ModelConfig cur = cfg;
    SpectrumResult best = spectrum(cur, k);
    best.residual = std::numeric_limits<double>::infinity();
    for (;;) {
        ModelConfig next = cur;
        for (auto& m : next.modes) m.fock.n_max *= 2;
        if (next.composite_dim() > next.max_dim) break;
        SpectrumResult s = spectrum(next, k);
        const double res = max_level_diff(best.eigenvalues, s.eigenvalues);
        s.n_log = std::move(best.n_log);
        s.residual_log = std::move(best.residual_log);
        s.n_log.push_back(s.n_used);
        s.residual_log.push_back(res);
        s.residual = res;
        best = std::move(s);
        cur = std::move(next);
        if (res <= tol) {
            best.converged = true;
            break;
        }
    }
    return best;
}

DeviationRow gauge_deviation_point(const ModelConfig& cfg, std::size_t k, double tol) {
    if (cfg.modes.size() != 1) {
        throw config_error("modes", "gauge comparison needs exactly one mode");
    }
    auto run = [&](Gauge g) {
        ModelConfig c = cfg;
        c.gauge = g;
        auto r = converge_truncation(c, k, tol);
        if (!r.converged) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", r.residual);
            throw numeric_error("not_converged", gauge_models::to_string(g) +
                                                     " spectrum did not converge below the "
                                                     "dimension cap (residual " + buf + ")");
        }
        return r;
    };
    const auto dip = run(Gauge::dipole);
    const auto gi = run(Gauge::coulomb_gi);
    const auto lin = run(Gauge::coulomb_linearized);
    DeviationRow row;
    row.eta = gauge_models::mode_eta(cfg, 0);
    row.dev_gi = max_level_diff(gi.eigenvalues, dip.eigenvalues);
    row.dev_lin = max_level_diff(lin.eigenvalues, dip.eigenvalues);
    row.n_gi = gi.n_used;
    row.n_dipole = dip.n_used;
    row.n_lin = lin.n_used;
    return row;
}

std::vector<DeviationRow> gauge_deviation(const TlsParams& tls, const ModeSpec& mode,
                                          const std::vector<double>& eta_grid, std::size_t k,
                                          double tol, std::size_t max_dim) {
    ModelConfig base;
    base.tls = tls;
    base.modes = {mode};
    base.max_dim = max_dim;
    std::vector<DeviationRow> rows(eta_grid.size());
    parallel_points(eta_grid.size(), [&](std::size_t i) {
        rows[i] = gauge_deviation_point(with_parameter(base, SweepParam::eta, eta_grid[i]), k, tol);
        rows[i].eta = eta_grid[i];
    });
    return rows;
}

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::eta: return "eta";
        case SweepParam::eps: return "eps";
        case SweepParam::omega_ph: return "omega_ph";
        case SweepParam::k_mode: return "k_mode";
    }
    return "unknown";
}

std::string to_string(SweepMetric m) {
    switch (m) {
        case SweepMetric::levels: return "levels";
        case SweepMetric::deviation: return "deviation";
        case SweepMetric::coupling: return "coupling";
    }
    return "unknown";
}

SweepParam sweep_param_from_string(const std::string& s) {
    for (auto p : {SweepParam::eta, SweepParam::eps, SweepParam::omega_ph, SweepParam::k_mode}) {
        if (to_string(p) == s) return p;
    }
    throw config_error("sweep_param", "unknown sweep parameter '" + s + "'");
}

SweepMetric sweep_metric_from_string(const std::string& s) {
    for (auto m : {SweepMetric::levels, SweepMetric::deviation, SweepMetric::coupling}) {
        if (to_string(m) == s) return m;
    }
    throw config_error("sweep_metric", "unknown sweep metric '" + s + "'");
}

ModelConfig with_parameter(const ModelConfig& base, SweepParam p, double value) {
    if (!std::isfinite(value)) throw config_error("sweep_grid", "sweep values must be finite");
    if (base.modes.empty()) throw config_error("modes", "at least one mode is required");
    ModelConfig cfg = base;
    auto& mode = cfg.modes.front();
    switch (p) {
        case SweepParam::eps: cfg.tls.eps = value; break;
        case SweepParam::omega_ph: mode.omega_ph = value; break;
        case SweepParam::k_mode:
            if (mode.profile.kind != ProfileKind::cosine) {
                throw config_error("sweep_param", "k_mode sweeps need a cosine mode profile");
            }
            mode.profile.k = value;
            break;
        case SweepParam::eta: {
            if (cfg.dipole_approx || mode.profile.kind == ProfileKind::constant) {
                mode.profile.amplitude = gauge_models::amplitude_for_eta(cfg.tls, value);
                break;
            }
            // Profile couplings are linear in the profile: rescale it.
            const double current = gauge_models::mode_eta(cfg, 0);
            if (current == 0.0) {
                throw config_error("eta_unreachable",
                                   "the mode profile has zero coupling; eta cannot be set");
            }
            const double s = value / current;
            mode.profile.amplitude *= s;
            for (auto& sample : mode.profile.samples) sample.second *= s;
            break;
        }
    }
    return cfg;
}

std::size_t Table::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(status.begin(), status.end(), [](const std::string& s) { return s != "ok"; }));
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    if (!t.status.empty()) out += ",status";
    out += '\n';
    char buf[64];
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof buf, "%.12g", t.rows[r][c]);
            out += buf;
        }
        if (!t.status.empty()) {
            out += ',';
            out += t.status[r];
        }
        out += '\n';
    }
    return out;
}

Table sweep(const ModelConfig& base, SweepParam p, const std::vector<double>& grid,
            SweepMetric metric, const SweepOptions& opts) {
    if (grid.empty()) throw config_error("sweep_grid", "sweep grid is empty");
    for (double v : grid) {
        if (!std::isfinite(v)) throw config_error("sweep_grid", "sweep values must be finite");
    }
    Table t;
    t.columns.push_back(to_string(p));
    switch (metric) {
        case SweepMetric::levels:
            for (std::size_t i = 0; i < opts.levels; ++i) t.columns.push_back("E" + std::to_string(i));
            t.columns.insert(t.columns.end(), {"n_used", "residual"});
            break;
        case SweepMetric::deviation:
            t.columns.insert(t.columns.end(),
                             {"dev_gi", "dev_lin", "n_gi", "n_dipole", "n_lin"});
            break;
        case SweepMetric::coupling:
            if (base.modes.size() == 1) {
                t.columns.push_back("eta_k");
            } else {
                for (std::size_t m = 0; m < base.modes.size(); ++m) {
                    t.columns.push_back("eta_k_" + std::to_string(m));
                }
            }
            break;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    t.rows.assign(grid.size(), std::vector<double>(t.columns.size(), nan));
    t.status.assign(grid.size(), "ok");

    const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long long ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        auto& row = t.rows[i];
        row[0] = grid[i];
        try {
            const ModelConfig cfg = with_parameter(base, p, grid[i]);
            switch (metric) {
                case SweepMetric::levels: {
                    const auto r = converge_truncation(cfg, opts.levels, opts.tol);
                    for (std::size_t k = 0; k < opts.levels; ++k) row[1 + k] = r.eigenvalues[k];
                    row[1 + opts.levels] = static_cast<double>(r.n_used);
                    row[2 + opts.levels] = r.residual;
                    if (!r.converged) t.status[i] = "error:not_converged";
                    break;
                }
                case SweepMetric::deviation: {
                    const auto d = gauge_deviation_point(cfg, opts.levels, opts.tol);
                    row[1] = d.dev_gi;
                    row[2] = d.dev_lin;
                    row[3] = static_cast<double>(d.n_gi);
                    row[4] = static_cast<double>(d.n_dipole);
                    row[5] = static_cast<double>(d.n_lin);
                    break;
                }
                case SweepMetric::coupling:
                    cfg.tls.validate();
                    for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
                        row[1 + m] = multimode::coupling_integral(cfg.modes[m].profile, cfg.tls);
                    }
                    break;
            }
        } catch (const Error& e) {
            t.status[i] = "error:" + e.code();
        } catch (const std::exception&) {
            t.status[i] = "error:internal";
        }
    }
    return t;
}

}  // namespace gauge_rabi::analysis
