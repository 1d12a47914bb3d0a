#pragma once

// Run configuration: strict JSON schema (unknown keys are rejected) mapped
// onto the library types.
//
// Energies are taken with hbar = 1. With "units": "natural" (the default)
// every energy is measured in units of the first mode's omega_ph: the model
// is rescaled so that this frequency is 1 before any computation, and all
// reported energies and tolerances are in that unit. "absolute" uses the
// numbers as given.

#include <optional>
#include <string>
#include <vector>

#include "gauge_rabi/analysis.hpp"
#include "gauge_rabi/schrodinger1d.hpp"
#include "json.hpp"

namespace gauge_rabi::cli {

using json = nlohmann::json;

enum class Units { natural, absolute };
std::string to_string(Units u);

struct ModeEntry {
    gauge_models::ModeSpec spec;
    // Dipole coupling requested instead of an explicit A0; resolved against
    // the TLS (A0 = 2 eta / (q a)).
    std::optional<double> eta;
};

struct CutoffBlock {
    double k_min = 0.1;
    double k_max = 30.0;
    std::size_t count = 300;
};

struct SweepBlock {
    analysis::SweepParam parameter = analysis::SweepParam::eta;
    analysis::SweepMetric metric = analysis::SweepMetric::levels;
    std::vector<double> grid;
};

struct PlotBlock {
    std::string csv;
    std::string x;
    std::vector<std::string> y;  // empty: every column except x and status
    std::string output = "plot.svg";
    std::string title;
};

struct RunConfig {
    json raw;  // the document as read, echoed into manifests
    Units units = Units::natural;

    std::optional<schrodinger1d::PotentialSpec> potential;
    std::optional<schrodinger1d::Grid1D> grid;
    std::size_t states = 3;

    std::optional<schrodinger1d::TlsParams> tls;
    std::vector<ModeEntry> modes;
    gauge_models::Gauge gauge = gauge_models::Gauge::coulomb_gi;
    bool dipole_approx = true;
    std::size_t trig_oversample = 0;

    std::size_t levels = 6;
    double tolerance = 1e-9;
    std::vector<double> eta_grid;  // gauge-check

    std::optional<CutoffBlock> cutoff;
    std::optional<SweepBlock> sweep;
    std::optional<PlotBlock> plot;
    std::string output_dir;
};

// Throws config errors (exit 2) with the offending key path in the message.
RunConfig parse_config(const json& doc);
// Unreadable file: data error "io" (exit 4). Malformed JSON: config "parse".
RunConfig load_config(const std::string& path);

// The TLS the model commands use: the explicit "tls" block, or the
// reduction of "potential" on "grid".
schrodinger1d::TlsParams resolve_tls(const RunConfig& cfg);

// Full model for the model commands, with units applied. `max_dim` is the
// composite-dimension cap.
gauge_models::ModelConfig model_config(const RunConfig& cfg, const schrodinger1d::TlsParams& tls,
                                       std::size_t max_dim);

// omega_ph of the first mode when units are natural, else 1.
double energy_unit(const RunConfig& cfg);

}  // namespace gauge_rabi::cli
