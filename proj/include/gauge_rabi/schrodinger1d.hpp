#pragma once

// Bound states of p^2/2m + V(x) on a uniform grid and their reduction to a
// two-level (tunneling) model.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gauge_rabi::schrodinger1d {

enum class PotentialKind { quartic_double_well, tilted_quartic, harmonic, tabulated };

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& s);

struct PotentialSpec {
    PotentialKind kind = PotentialKind::quartic_double_well;
    double V0 = 0.0;    // barrier height
    double x0 = 1.0;    // half-separation of the minima
    double tilt = 0.0;  // linear slope, energy / length
    double omega = 1.0; // harmonic kind only: V = m omega^2 x^2 / 2
    double m = 1.0;
    double q = 1.0;
    std::vector<std::pair<double, double>> samples;  // tabulated kind, sorted by x

    // Throws a config error on invalid parameters.
    void validate() const;
    // Tabulated potentials are linearly interpolated.
    double operator()(double x) const;
};

struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t n = 64;

    void validate() const;
    double spacing() const { return (x_max - x_min) / static_cast<double>(n - 1); }
    double x(std::size_t i) const { return x_min + spacing() * static_cast<double>(i); }
};

struct BoundState {
    double energy = 0.0;
    std::vector<double> psi;  // n samples, psi[0] = psi[n-1] = 0, sum |psi|^2 h = 1
};

struct TlsParams {
    double delta = 1.0;    // tunneling gap (= 2t)
    double eps = 0.0;      // detuning between the localized states
    double t = 0.5;        // hopping, -<L|H0|R>
    double a = 1.0;        // effective site spacing, x_R - x_L
    double q = 1.0;
    double x_L = -0.5;
    double x_R = 0.5;
    double mu = 0.0;       // anharmonicity (w21 - w10) / w10
    double omega_q = 1.0;  // E1 - E0 = sqrt(delta^2 + eps^2)

    void validate() const;
};

// Lowest k eigenstates of the 3-point finite-difference Hamiltonian with
// Dirichlet walls, ascending in energy. Each state's sign is fixed so that its
// largest-magnitude sample is positive.
std::vector<BoundState> solve_bound_states(const PotentialSpec& v, const Grid1D& g, std::size_t k);

// Needs at least three states (the third sets mu).
TlsParams reduce_to_tls(const std::vector<BoundState>& states, const PotentialSpec& v,
                        const Grid1D& g);

enum class Validity { valid, marginal, invalid };
std::string to_string(Validity v);

struct ValidityVerdict {
    Validity verdict = Validity::valid;
    double ratio = 0.0;  // |eta| / mu
};

// valid below eta/mu = 0.1, marginal below 0.5, invalid otherwise.
ValidityVerdict anharmonicity_check(const TlsParams& p, double eta);

// Trapezoidal <f|g> on the grid.
double grid_inner(const std::vector<double>& f, const std::vector<double>& g, double h);

}  // namespace gauge_rabi::schrodinger1d
