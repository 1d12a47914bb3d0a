#pragma once

// Light-matter Hamiltonians of a two-level emitter and one cavity mode in
// every gauge, the gauge unitaries that connect them, and the classical
// two-site machinery (parallel transporter, local phase change) they are
// built from.
//
// Composite space ordering is TLS (x) field. TLS operators use the working
// basis (|A>, |S>) of quantum_ops.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gauge_rabi/numal.hpp"
#include "gauge_rabi/quantum_ops.hpp"
#include "gauge_rabi/schrodinger1d.hpp"

namespace gauge_rabi::gauge_models {

using numal::ComplexMatrix;
using numal::cplx;
using quantum_ops::FockSpace;
using schrodinger1d::TlsParams;

inline constexpr std::size_t kDefaultMaxDim = 8192;

enum class ProfileKind { constant, cosine, tabulated };

// Classical shape of the mode's vector potential across the emitter.
struct ModeProfile {
    ProfileKind kind = ProfileKind::constant;
    double amplitude = 0.0;  // A0, real
    double k = 0.0;          // cosine kind: wavevector
    double phi0 = 0.0;       // cosine kind: phase offset
    std::vector<std::pair<double, double>> samples;  // tabulated kind: (x, A(x))

    void validate() const;
    // Tabulated profiles are linearly interpolated; throws outside range.
    double operator()(double x) const;
};

struct ModeSpec {
    double omega_ph = 1.0;
    ModeProfile profile;  // profile.amplitude is the zero-point amplitude A0
    FockSpace fock{16};

    double A0() const { return profile.amplitude; }
    void validate() const;
};

enum class Gauge { coulomb_gi, dipole, coulomb_linearized };

std::string to_string(Gauge g);
Gauge gauge_from_string(const std::string& s);
std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

struct ModelConfig {
    TlsParams tls;
    std::vector<ModeSpec> modes;
    Gauge gauge = Gauge::coulomb_gi;
    bool dipole_approx = true;
    std::size_t max_dim = kDefaultMaxDim;
    // When > 0, cos/sin of the field quadrature are evaluated at
    // N + trig_oversample Fock states and then projected back to N.
    std::size_t trig_oversample = 0;

    void validate() const;
    std::size_t composite_dim() const;
};

// Dipole value q (a/2) A0.
double dipole_eta(const TlsParams& tls, double A0);
// Coupling of mode `m`: dipole value, or the profile integral when the
// config disables the dipole approximation.
double mode_eta(const ModelConfig& cfg, std::size_t m);
// Choose A0 so that the dipole coupling equals `eta`.
double amplitude_for_eta(const TlsParams& tls, double eta);

ComplexMatrix h_coulomb_gi_symmetric(const ModelConfig& cfg);
ComplexMatrix h_coulomb_gi_asymmetric(const ModelConfig& cfg);
ComplexMatrix h_dipole(const ModelConfig& cfg);
ComplexMatrix h_coulomb_linearized(const ModelConfig& cfg);
// Single-mode dispatch on cfg.gauge.
ComplexMatrix build_single_mode(const ModelConfig& cfg);

enum class UnitaryFamily { sigma_x, rho_z };

// exp(i Phi (x) P / 2) with Phi = 2 eta (a + a^dagger), TLS factor first.
ComplexMatrix gauge_unitary(const ModelConfig& cfg, UnitaryFamily family);

// U(Delta/2 sigma_z (x) I)U^dagger + I (x) omega a^dagger a, the rotated
// bare Hamiltonian; with detuning the bare part is eps/2 rho_z - Delta/2 rho_x.
ComplexMatrix rotated_bare_hamiltonian(const ModelConfig& cfg, UnitaryFamily family);

// exp(i q int_{x_L}^{x_R} A(x) dx)
cplx parallel_transporter_classical(const std::function<double(double)>& field, double x_L,
                                    double x_R, double q);
cplx parallel_transporter_classical(const ModeProfile& profile, double x_L, double x_R, double q);

struct TwoSiteGauge {
    double theta_L = 0.0;
    double theta_R = 0.0;

    double phi() const { return 0.5 * (theta_R + theta_L); }
    double theta() const { return 0.5 * (theta_R - theta_L); }
};

// c_L -> e^{i q theta_L} c_L, c_R -> e^{i q theta_R} c_R on the TLS factor
// of `state` (length 2 or 2 x field dimension, TLS first, working basis).
std::vector<cplx> apply_two_site_gauge(std::span<const cplx> state, const TwoSiteGauge& g,
                                       double q);
// Factored form e^{i q phi} exp(i q theta sigma_x) as a 2x2 matrix.
ComplexMatrix two_site_gauge_operator(const TwoSiteGauge& g, double q);
// |R><L| U + h.c. in the working basis.
ComplexMatrix transported_hopping(cplx transporter);

}  // namespace gauge_rabi::gauge_models
