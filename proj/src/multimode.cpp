#include "gauge_rabi/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gauge_rabi/error.hpp"
#include "gauge_rabi/quadrature.hpp"

namespace gauge_rabi::multimode {

using numal::cplx;
using quantum_ops::Axis;
using quantum_ops::embed;
using quantum_ops::rho;
using quantum_ops::sigma;

namespace {

std::vector<std::size_t> field_dims(std::span<const ModeSpec> modes) {
    std::vector<std::size_t> dims;
    dims.reserve(modes.size());
    for (const auto& m : modes) {
        m.fock.validate();
        dims.push_back(m.fock.n_max);
    }
    return dims;
}

std::size_t product(const std::vector<std::size_t>& dims, std::size_t max_dim) {
    std::size_t d = 1;
    for (std::size_t n : dims) {
        if (d > max_dim / n) {
            throw config_error("dim_overflow", "field dimension exceeds cap " +
                                                   std::to_string(max_dim));
        }
        d *= n;
    }
    return d;
}

void check_modes(const TlsParams& tls, std::span<const ModeSpec> modes, std::size_t max_dim) {
    tls.validate();
    if (modes.empty()) throw config_error("modes", "at least one mode is required");
    for (const auto& m : modes) m.validate();
    const std::size_t d = product(field_dims(modes), max_dim);
    if (d > max_dim / 2) {
        throw config_error("dim_overflow", "composite dimension " + std::to_string(2 * d) +
                                               " exceeds cap " + std::to_string(max_dim));
    }
}

ComplexMatrix leading_block(const ComplexMatrix& m, std::size_t n) {
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, j);
    return out;
}

ComplexMatrix bare_tls(const TlsParams& tls) {
    return (tls.eps / 2.0) * rho(Axis::z) - (tls.delta / 2.0) * rho(Axis::x);
}

}  // namespace

double coupling_integral(const ModeProfile& profile, const TlsParams& tls) {
    profile.validate();
    if (profile.kind == gauge_models::ProfileKind::constant) {
        return tls.q * (tls.a / 2.0) * profile.amplitude;
    }
    tls.validate();
    const auto r = quadrature::adaptive_simpson([&](double x) { return profile(x); }, tls.x_L,
                                                tls.x_R, 1e-12);
    return 0.5 * tls.q * r.value;
}

std::vector<double> mode_couplings(const TlsParams& tls, std::span<const ModeSpec> modes,
                                   const MultimodeOptions& opts) {
    std::vector<double> etas;
    etas.reserve(modes.size());
    for (const auto& m : modes) {
        etas.push_back(opts.dipole_approx ? gauge_models::dipole_eta(tls, m.A0())
                                          : coupling_integral(m.profile, tls));
    }
    return etas;
}

FieldTrig field_trig(std::span<const ModeSpec> modes, std::span<const double> etas,
                     std::size_t max_dim, std::size_t oversample) {
    if (modes.size() != etas.size() || modes.empty()) {
        throw config_error("dim_mismatch", "field_trig: one coupling per mode is required");
    }
    product(field_dims(modes), max_dim);
    FieldTrig acc;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const std::size_t n = modes[k].fock.n_max;
        const quantum_ops::FockSpace big{n + oversample};
        auto cs = numal::matrix_cos_sin((2.0 * etas[k]) * quantum_ops::quadrature(big));
        if (oversample > 0) {
            cs.cos = leading_block(cs.cos, n);
            cs.sin = leading_block(cs.sin, n);
        }
        if (k == 0) {
            acc.cos = std::move(cs.cos);
            acc.sin = std::move(cs.sin);
            continue;
        }
        // cos(P + Q) = cosP cosQ - sinP sinQ, sin(P + Q) = sinP cosQ + cosP sinQ
        ComplexMatrix c = numal::kron(acc.cos, cs.cos, max_dim);
        c -= numal::kron(acc.sin, cs.sin, max_dim);
        ComplexMatrix s = numal::kron(acc.sin, cs.cos, max_dim);
        s += numal::kron(acc.cos, cs.sin, max_dim);
        acc.cos = std::move(c);
        acc.sin = std::move(s);
    }
    return acc;
}

ComplexMatrix field_energy(std::span<const ModeSpec> modes, std::size_t max_dim) {
    const auto dims = field_dims(modes);
    ComplexMatrix h(product(dims, max_dim));
    for (std::size_t k = 0; k < modes.size(); ++k) {
        h += quantum_ops::embed_mode(modes[k].omega_ph * quantum_ops::number(modes[k].fock), k,
                                     dims, max_dim);
    }
    return h;
}

ComplexMatrix h_multimode_gi(const TlsParams& tls, std::span<const ModeSpec> modes,
                             const MultimodeOptions& opts) {
    check_modes(tls, modes, opts.max_dim);
    const auto etas = mode_couplings(tls, modes, opts);
    const auto trig = field_trig(modes, etas, opts.max_dim);
    ComplexMatrix h = embed(sigma(Axis::z), trig.cos, opts.max_dim);
    h += embed(sigma(Axis::y), trig.sin, opts.max_dim);
    h *= tls.delta / 2.0;
    const auto id = ComplexMatrix::identity(trig.cos.dim());
    if (tls.eps != 0.0) h += embed((tls.eps / 2.0) * rho(Axis::z), id, opts.max_dim);
    h += embed(ComplexMatrix::identity(2), field_energy(modes, opts.max_dim), opts.max_dim);
    return h;
}

ComplexMatrix multimode_gauge_unitary(const TlsParams& tls, std::span<const ModeSpec> modes,
                                      const MultimodeOptions& opts) {
    check_modes(tls, modes, opts.max_dim);
    auto etas = mode_couplings(tls, modes, opts);
    for (double& e : etas) e *= 0.5;
    const auto trig = field_trig(modes, etas, opts.max_dim);
    ComplexMatrix u = embed(ComplexMatrix::identity(2), trig.cos, opts.max_dim);
    u += embed(cplx(0.0, 1.0) * sigma(Axis::x), trig.sin, opts.max_dim);
    return u;
}

ComplexMatrix multimode_rotated_bare(const TlsParams& tls, std::span<const ModeSpec> modes,
                                     const MultimodeOptions& opts) {
    const auto u = multimode_gauge_unitary(tls, modes, opts);
    const auto field = field_energy(modes, opts.max_dim);
    const auto id = ComplexMatrix::identity(field.dim());
    ComplexMatrix h = u * embed(bare_tls(tls), id, opts.max_dim) * u.adjoint();
    h += embed(ComplexMatrix::identity(2), field, opts.max_dim);
    return h;
}

std::vector<CutoffRow> cutoff_scan(const TlsParams& tls, const ModeProfile& base,
                                   std::span<const double> ks) {
    if (base.kind != gauge_models::ProfileKind::cosine) {
        throw config_error("profile", "cutoff scan needs a cosine mode profile");
    }
    std::vector<CutoffRow> rows(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        ModeProfile p = base;
        p.k = ks[i];
        rows[i] = {ks[i], coupling_integral(p, tls)};
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const CutoffRow& a, const CutoffRow& b) { return a.k < b.k; });
    return rows;
}

std::vector<CutoffRow> cutoff_scan(const TlsParams& tls, const ModeProfile& base, double k_min,
                                   double k_max, std::size_t count) {
    if (count == 0 || !(k_max >= k_min) || !std::isfinite(k_min) || !std::isfinite(k_max)) {
        throw config_error("cutoff_range", "cutoff scan needs count >= 1 and k_min <= k_max");
    }
    std::vector<double> ks(count);
    for (std::size_t i = 0; i < count; ++i) {
        ks[i] = count == 1 ? k_min
                           : k_min + (k_max - k_min) * static_cast<double>(i) /
                                         static_cast<double>(count - 1);
    }
    return cutoff_scan(tls, base, ks);
}

std::string cutoff_csv(std::span<const CutoffRow> rows) {
    std::string out = "k,eta_k\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", r.k, r.eta_k);
        out += buf;
    }
    return out;
}

}  // namespace gauge_rabi::multimode
