#include "gauge_rabi/gauge_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gauge_rabi/error.hpp"
#include "gauge_rabi/multimode.hpp"
#include "gauge_rabi/quadrature.hpp"

namespace gauge_rabi::gauge_models {

using quantum_ops::Axis;
using quantum_ops::embed;
using quantum_ops::rho;
using quantum_ops::sigma;

std::string to_string(Gauge g) {
    switch (g) {
        case Gauge::coulomb_gi: return "coulomb_gi";
        case Gauge::dipole: return "dipole";
        case Gauge::coulomb_linearized: return "coulomb_linearized";
    }
    return "unknown";
}

Gauge gauge_from_string(const std::string& s) {
    if (s == "coulomb_gi") return Gauge::coulomb_gi;
    if (s == "dipole") return Gauge::dipole;
    if (s == "coulomb_linearized") return Gauge::coulomb_linearized;
    throw config_error("gauge", "unknown gauge '" + s + "'");
}

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::constant: return "constant";
        case ProfileKind::cosine: return "cosine";
        case ProfileKind::tabulated: return "tabulated";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "constant") return ProfileKind::constant;
    if (s == "cosine") return ProfileKind::cosine;
    if (s == "tabulated") return ProfileKind::tabulated;
    throw config_error("profile_kind", "unknown mode profile kind '" + s + "'");
}

void ModeProfile::validate() const {
    if (!std::isfinite(amplitude)) throw config_error("profile", "amplitude must be finite");
    if (kind == ProfileKind::cosine && (!std::isfinite(k) || !std::isfinite(phi0))) {
        throw config_error("profile", "cosine profile needs finite k and phi0");
    }
    if (kind == ProfileKind::tabulated) {
        if (samples.size() < 2) throw config_error("profile", "tabulated profile needs >= 2 samples");
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i].first > samples[i - 1].first)) {
                throw config_error("profile", "tabulated profile x must be increasing");
            }
        }
    }
}

double ModeProfile::operator()(double x) const {
    switch (kind) {
        case ProfileKind::constant: return amplitude;
        case ProfileKind::cosine: return amplitude * std::cos(k * x + phi0);
        case ProfileKind::tabulated: {
            if (x < samples.front().first || x > samples.back().first) {
                throw config_error("profile_range", "tabulated profile does not cover x = " +
                                                        std::to_string(x));
            }
            auto it = std::upper_bound(samples.begin(), samples.end(), x,
                                       [](double v, const auto& s) { return v < s.first; });
            if (it == samples.end()) return samples.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (x - lo.first) / (hi.first - lo.first);
            return (1.0 - w) * lo.second + w * hi.second;
        }
    }
    return 0.0;
}

void ModeSpec::validate() const {
    if (!(omega_ph > 0.0)) throw config_error("mode", "omega_ph must be > 0");
    fock.validate();
    profile.validate();
}

void ModelConfig::validate() const {
    tls.validate();
    if (modes.empty()) throw config_error("modes", "at least one mode is required");
    for (const auto& m : modes) m.validate();
    const std::size_t d = composite_dim();
    if (d > max_dim) {
        throw config_error("dim_overflow", "composite dimension " + std::to_string(d) +
                                               " exceeds cap " + std::to_string(max_dim));
    }
}

std::size_t ModelConfig::composite_dim() const {
    std::size_t d = 2;
    for (const auto& m : modes) {
        if (m.fock.n_max != 0 && d > std::numeric_limits<std::size_t>::max() / m.fock.n_max) {
            return std::numeric_limits<std::size_t>::max();
        }
        d *= m.fock.n_max;
    }
    return d;
}

double dipole_eta(const TlsParams& tls, double A0) { return tls.q * (tls.a / 2.0) * A0; }

double amplitude_for_eta(const TlsParams& tls, double eta) {
    const double unit = tls.q * tls.a / 2.0;
    if (unit == 0.0) throw config_error("tls", "q * a vanishes; eta cannot be set");
    return eta / unit;
}

double mode_eta(const ModelConfig& cfg, std::size_t m) {
    const auto& mode = cfg.modes.at(m);
    if (cfg.dipole_approx) return dipole_eta(cfg.tls, mode.A0());
    return multimode::coupling_integral(mode.profile, cfg.tls);
}

namespace {

const ModeSpec& single_mode(const ModelConfig& cfg, const char* who) {
    cfg.validate();
    if (cfg.modes.size() != 1) {
        throw config_error("modes", std::string(who) + " needs exactly one mode");
    }
    return cfg.modes.front();
}

struct SingleModeOps {
    ComplexMatrix id;
    ComplexMatrix field;  // omega a^dagger a
    ComplexMatrix quad;   // a + a^dagger
    multimode::FieldTrig trig;
};

// cos/sin of `scale` * 2 (a + a^dagger) ... with scale = eta gives Phi.
SingleModeOps single_mode_ops(const ModelConfig& cfg, const ModeSpec& mode, double eta) {
    SingleModeOps ops;
    ops.id = ComplexMatrix::identity(mode.fock.n_max);
    ops.field = mode.omega_ph * quantum_ops::number(mode.fock);
    ops.quad = quantum_ops::quadrature(mode.fock);
    const double etas[] = {eta};
    ops.trig = multimode::field_trig(std::span<const ModeSpec>(&mode, 1), etas, cfg.max_dim,
                                     cfg.trig_oversample);
    return ops;
}

ComplexMatrix bare_tls(const TlsParams& tls) {
    return (tls.eps / 2.0) * rho(Axis::z) - (tls.delta / 2.0) * rho(Axis::x);
}

}  // namespace

ComplexMatrix h_coulomb_gi_symmetric(const ModelConfig& cfg) {
    const auto& mode = single_mode(cfg, "h_coulomb_gi_symmetric");
    if (cfg.tls.eps != 0.0) return h_coulomb_gi_asymmetric(cfg);
    const auto ops = single_mode_ops(cfg, mode, mode_eta(cfg, 0));
    const double half_gap = cfg.tls.delta / 2.0;
    ComplexMatrix h = embed(sigma(Axis::z), ops.trig.cos, cfg.max_dim);
    h += embed(sigma(Axis::y), ops.trig.sin, cfg.max_dim);
    h *= half_gap;
    h += embed(ComplexMatrix::identity(2), ops.field, cfg.max_dim);
    return h;
}

ComplexMatrix h_coulomb_gi_asymmetric(const ModelConfig& cfg) {
    const auto& mode = single_mode(cfg, "h_coulomb_gi_asymmetric");
    const auto ops = single_mode_ops(cfg, mode, mode_eta(cfg, 0));
    const double half_gap = cfg.tls.delta / 2.0;
    ComplexMatrix h = embed(ComplexMatrix::identity(2), ops.field, cfg.max_dim);
    h += embed((cfg.tls.eps / 2.0) * rho(Axis::z), ops.id, cfg.max_dim);
    ComplexMatrix hop = embed(rho(Axis::x), ops.trig.cos, cfg.max_dim);
    hop -= embed(rho(Axis::y), ops.trig.sin, cfg.max_dim);
    hop *= -half_gap;
    h += hop;
    return h;
}

ComplexMatrix h_dipole(const ModelConfig& cfg) {
    const auto& mode = single_mode(cfg, "h_dipole");
    const double eta = mode_eta(cfg, 0);
    const double w = mode.omega_ph;
    const auto id = ComplexMatrix::identity(mode.fock.n_max);
    const auto a = quantum_ops::annihilation(mode.fock);
    ComplexMatrix h = embed(ComplexMatrix::identity(2), w * quantum_ops::number(mode.fock),
                            cfg.max_dim);
    h += embed(bare_tls(cfg.tls), id, cfg.max_dim);
    h += embed(rho(Axis::z), cplx(0.0, -eta * w) * (a - a.adjoint()), cfg.max_dim);
    // eta^2 omega: the constant left by displacing omega a^dagger a.
    h += (eta * eta * w) * ComplexMatrix::identity(h.dim());
    return h;
}

ComplexMatrix h_coulomb_linearized(const ModelConfig& cfg) {
    const auto& mode = single_mode(cfg, "h_coulomb_linearized");
    const double eta = mode_eta(cfg, 0);
    const auto id = ComplexMatrix::identity(mode.fock.n_max);
    ComplexMatrix h = embed(bare_tls(cfg.tls), id, cfg.max_dim);
    h += embed((cfg.tls.delta * eta) * sigma(Axis::y), quantum_ops::quadrature(mode.fock),
               cfg.max_dim);
    h += embed(ComplexMatrix::identity(2), mode.omega_ph * quantum_ops::number(mode.fock),
               cfg.max_dim);
    return h;
}

ComplexMatrix build_single_mode(const ModelConfig& cfg) {
    switch (cfg.gauge) {
        case Gauge::coulomb_gi:
            return cfg.tls.eps == 0.0 ? h_coulomb_gi_symmetric(cfg) : h_coulomb_gi_asymmetric(cfg);
        case Gauge::dipole: return h_dipole(cfg);
        case Gauge::coulomb_linearized: return h_coulomb_linearized(cfg);
    }
    throw config_error("gauge", "unhandled gauge");
}

ComplexMatrix gauge_unitary(const ModelConfig& cfg, UnitaryFamily family) {
    const auto& mode = single_mode(cfg, "gauge_unitary");
    // exp(i eta X P) = I (x) cos(eta X) + i P (x) sin(eta X) since P^2 = I;
    // field_trig(eta/2) yields cos/sin of eta X.
    const auto ops = single_mode_ops(cfg, mode, mode_eta(cfg, 0) / 2.0);
    const ComplexMatrix p = family == UnitaryFamily::sigma_x ? sigma(Axis::x) : rho(Axis::z);
    ComplexMatrix u = embed(ComplexMatrix::identity(2), ops.trig.cos, cfg.max_dim);
    u += embed(cplx(0.0, 1.0) * p, ops.trig.sin, cfg.max_dim);
    return u;
}

ComplexMatrix rotated_bare_hamiltonian(const ModelConfig& cfg, UnitaryFamily family) {
    const auto& mode = single_mode(cfg, "rotated_bare_hamiltonian");
    const auto u = gauge_unitary(cfg, family);
    const auto id = ComplexMatrix::identity(mode.fock.n_max);
    ComplexMatrix h = u * embed(bare_tls(cfg.tls), id, cfg.max_dim) * u.adjoint();
    h += embed(ComplexMatrix::identity(2), mode.omega_ph * quantum_ops::number(mode.fock),
               cfg.max_dim);
    return h;
}

cplx parallel_transporter_classical(const std::function<double(double)>& field, double x_L,
                                    double x_R, double q) {
    const double integral = quadrature::adaptive_simpson(field, x_L, x_R, 1e-12).value;
    return std::polar(1.0, q * integral);
}

cplx parallel_transporter_classical(const ModeProfile& profile, double x_L, double x_R,
                                    double q) {
    profile.validate();
    if (profile.kind == ProfileKind::constant) {
        return std::polar(1.0, q * profile.amplitude * (x_R - x_L));
    }
    return parallel_transporter_classical([&](double x) { return profile(x); }, x_L, x_R, q);
}

std::vector<cplx> apply_two_site_gauge(std::span<const cplx> state, const TwoSiteGauge& g,
                                       double q) {
    if (state.empty() || state.size() % 2 != 0) {
        throw config_error("state_dim", "two-site gauge needs a state of even length");
    }
    const std::size_t m = state.size() / 2;
    const ComplexMatrix b = quantum_ops::rl_to_as_basis();
    const cplx phase_r = std::polar(1.0, q * g.theta_R);
    const cplx phase_l = std::polar(1.0, q * g.theta_L);
    std::vector<cplx> out(state.size());
    for (std::size_t f = 0; f < m; ++f) {
        const cplx psi_a = state[f];
        const cplx psi_s = state[m + f];
        const cplx c_r = phase_r * (std::conj(b(0, 0)) * psi_a + std::conj(b(1, 0)) * psi_s);
        const cplx c_l = phase_l * (std::conj(b(0, 1)) * psi_a + std::conj(b(1, 1)) * psi_s);
        out[f] = c_r * b(0, 0) + c_l * b(0, 1);
        out[m + f] = c_r * b(1, 0) + c_l * b(1, 1);
    }
    return out;
}

ComplexMatrix two_site_gauge_operator(const TwoSiteGauge& g, double q) {
    const double th = q * g.theta();
    ComplexMatrix rot = std::cos(th) * ComplexMatrix::identity(2);
    rot += cplx(0.0, std::sin(th)) * sigma(Axis::x);
    rot *= std::polar(1.0, q * g.phi());
    return rot;
}

ComplexMatrix transported_hopping(cplx transporter) {
    const ComplexMatrix b = quantum_ops::rl_to_as_basis();
    ComplexMatrix h(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            // |R><L| U + |L><R| U*
            h(i, j) = transporter * b(i, 0) * std::conj(b(j, 1)) +
                      std::conj(transporter) * b(i, 1) * std::conj(b(j, 0));
        }
    }
    return h;
}

}  // namespace gauge_rabi::gauge_models
