#pragma once

// Couplings beyond the dipole approximation: the line integral of a mode
// profile between the two sites, the multimode gauge-invariant Hamiltonian
// built from those couplings, and scans of the coupling against the mode
// wavevector (the short-wavelength cutoff).

#include <span>
#include <string>
#include <vector>

#include "gauge_rabi/gauge_models.hpp"

namespace gauge_rabi::multimode {

using gauge_models::ComplexMatrix;
using gauge_models::ModeProfile;
using gauge_models::ModeSpec;
using gauge_models::TlsParams;

// eta_k = (q/2) int_{x_L}^{x_R} A(x) dx by adaptive Simpson (abs tol 1e-12).
// Constant profiles return q (a/2) A0 without quadrature.
double coupling_integral(const ModeProfile& profile, const TlsParams& tls);

struct MultimodeOptions {
    std::size_t max_dim = gauge_models::kDefaultMaxDim;
    // Use q (a/2) A0 for every mode instead of the profile integral.
    bool dipole_approx = false;
};

std::vector<double> mode_couplings(const TlsParams& tls, std::span<const ModeSpec> modes,
                                   const MultimodeOptions& opts = {});

// cos(Phi), sin(Phi) on the multimode field space, Phi = sum_k 2 eta_k (a_k + a_k^dagger).
// Each single-mode factor is evaluated by spectral calculus on the truncated
// quadrature (optionally at N + oversample, then projected to N) and the
// factors are combined with the angle-addition identities.
struct FieldTrig {
    ComplexMatrix cos;
    ComplexMatrix sin;
};
FieldTrig field_trig(std::span<const ModeSpec> modes, std::span<const double> etas,
                     std::size_t max_dim = gauge_models::kDefaultMaxDim,
                     std::size_t oversample = 0);

// Delta/2 [sigma_z cos Phi + sigma_y sin Phi] + eps/2 rho_z + sum_k omega_k n_k.
ComplexMatrix h_multimode_gi(const TlsParams& tls, std::span<const ModeSpec> modes,
                             const MultimodeOptions& opts = {});

// exp(i Phi (x) sigma_x / 2)
ComplexMatrix multimode_gauge_unitary(const TlsParams& tls, std::span<const ModeSpec> modes,
                                      const MultimodeOptions& opts = {});

// Bare TLS + field Hamiltonian with only the TLS part conjugated by the
// multimode gauge unitary.
ComplexMatrix multimode_rotated_bare(const TlsParams& tls, std::span<const ModeSpec> modes,
                                     const MultimodeOptions& opts = {});

// Sum of omega_k n_k embedded on the field factors (TLS not included).
ComplexMatrix field_energy(std::span<const ModeSpec> modes,
                           std::size_t max_dim = gauge_models::kDefaultMaxDim);

struct CutoffRow {
    double k = 0.0;
    double eta_k = 0.0;
};

// Coupling of `base` (its k replaced) for every wavevector in `ks`; rows
// sorted by k.
std::vector<CutoffRow> cutoff_scan(const TlsParams& tls, const ModeProfile& base,
                                   std::span<const double> ks);
// `count` evenly spaced wavevectors in [k_min, k_max].
std::vector<CutoffRow> cutoff_scan(const TlsParams& tls, const ModeProfile& base, double k_min,
                                   double k_max, std::size_t count);

// Header `k,eta_k`, values with 12 significant digits.
std::string cutoff_csv(std::span<const CutoffRow> rows);

}  // namespace gauge_rabi::multimode
