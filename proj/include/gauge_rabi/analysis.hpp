#pragma once

// Spectra of the built Hamiltonians, truncation control, cross-gauge
// comparison and parameter sweeps. Tables are plain numeric columns plus an
// optional `status` column (`ok` or `error:<code>`).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gauge_rabi/gauge_models.hpp"
#include "gauge_rabi/multimode.hpp"

namespace gauge_rabi::analysis {

using gauge_models::ModelConfig;
using gauge_models::ModeSpec;
using gauge_models::TlsParams;

// GAUGE_RABI_MAX_DIM when set (must be a positive integer), else `fallback`.
std::size_t max_dim_from_env(std::size_t fallback = gauge_models::kDefaultMaxDim);

// Single-mode configs dispatch on cfg.gauge; several modes require
// coulomb_gi and use the multimode builder.
numal::ComplexMatrix build_hamiltonian(const ModelConfig& cfg);

struct SpectrumResult {
    std::vector<double> eigenvalues;  // lowest k, ascending
    std::size_t n_used = 0;           // largest per-mode Fock truncation used
    bool converged = false;
    double residual = 0.0;
    // One entry per doubling: truncation reached and the residual against
    // the previous one.
    std::vector<std::size_t> n_log;
    std::vector<double> residual_log;
};

SpectrumResult spectrum(const ModelConfig& cfg, std::size_t k);

// Doubles every mode's truncation until the k lowest levels move by at most
// `tol` or the next step would exceed cfg.max_dim. Never throws for lack of
// convergence; check `converged`.
SpectrumResult converge_truncation(const ModelConfig& cfg, std::size_t k, double tol);

struct DeviationRow {
    double eta = 0.0;
    double dev_gi = 0.0;   // max_i |E_i(coulomb_gi) - E_i(dipole)|
    double dev_lin = 0.0;  // max_i |E_i(coulomb_linearized) - E_i(dipole)|
    std::size_t n_gi = 0, n_dipole = 0, n_lin = 0;
};

// Each gauge converged on its own; throws numeric "not_converged" when any
// of the three fails to converge below the cap.
DeviationRow gauge_deviation_point(const ModelConfig& cfg, std::size_t k, double tol);
std::vector<DeviationRow> gauge_deviation(const TlsParams& tls, const ModeSpec& mode,
                                          const std::vector<double>& eta_grid, std::size_t k,
                                          double tol,
                                          std::size_t max_dim = gauge_models::kDefaultMaxDim);

enum class SweepParam { eta, eps, omega_ph, k_mode };
enum class SweepMetric { levels, deviation, coupling };

std::string to_string(SweepParam p);
std::string to_string(SweepMetric m);
SweepParam sweep_param_from_string(const std::string& s);
SweepMetric sweep_metric_from_string(const std::string& s);

// Applies one grid value to the first mode (eta, omega_ph, k_mode) or to
// the TLS (eps). eta rescales the mode amplitude so that mode_eta equals it.
ModelConfig with_parameter(const ModelConfig& base, SweepParam p, double value);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;  // empty: no status column

    std::size_t error_count() const;
};

// Header row, `%.12g` floats, trailing status column when present.
std::string to_csv(const Table& t);

struct SweepOptions {
    std::size_t levels = 6;
    double tol = 1e-9;
};

// One row per grid point in grid order; failures are recorded in the
// status column. Points run concurrently.
Table sweep(const ModelConfig& base, SweepParam p, const std::vector<double>& grid,
            SweepMetric metric, const SweepOptions& opts = {});

}  // namespace gauge_rabi::analysis
