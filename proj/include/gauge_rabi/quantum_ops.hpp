#pragma once

// Truncated bosonic operators and the two Pauli families.
//
// All 2x2 operators are represented in the working basis (|A>, |S>). The
// sigma family is diagonal there; the rho family refers to the localized
// pair |R> = (|S> + |A>)/sqrt2, |L> = (|S> - |A>)/sqrt2 and, in the working
// basis, satisfies rho_z = sigma_x, rho_x = -sigma_z, rho_y = sigma_y.

#include <cstddef>
#include <span>
#include <vector>

#include "gauge_rabi/numal.hpp"

namespace gauge_rabi::quantum_ops {

using numal::ComplexMatrix;

struct FockSpace {
    std::size_t n_max = 2;  // retained states |0> ... |n_max - 1>
    void validate() const;
};

enum class PauliFamily { sigma, rho };
enum class Axis { x, y, z };

struct OperatorLabel {
    PauliFamily family = PauliFamily::sigma;
    Axis axis = Axis::z;
};

ComplexMatrix annihilation(const FockSpace& f);
ComplexMatrix creation(const FockSpace& f);
ComplexMatrix number(const FockSpace& f);
// a + a^dagger
ComplexMatrix quadrature(const FockSpace& f);

ComplexMatrix pauli(OperatorLabel label);
inline ComplexMatrix sigma(Axis axis) { return pauli({PauliFamily::sigma, axis}); }
inline ComplexMatrix rho(Axis axis) { return pauli({PauliFamily::rho, axis}); }

// The family's own matrix: sigma in (|A>, |S>), rho in (|R>, |L>).
ComplexMatrix pauli_native(OperatorLabel label);
// Columns are |R>, |L> written in the (|A>, |S>) basis, so that
// pauli(rho_i) = B pauli_native(rho_i) B^dagger.
ComplexMatrix rl_to_as_basis();

// tls_op (x) field_op, TLS factor first.
ComplexMatrix embed(const ComplexMatrix& tls_op, const ComplexMatrix& field_op,
                    std::size_t max_dim = numal::kDefaultKronMaxDim);

// I (x) ... (x) op (x) ... (x) I over the field factors `dims`, with `op`
// in slot `index` (ascending mode order).
ComplexMatrix embed_mode(const ComplexMatrix& op, std::size_t index,
                         std::span<const std::size_t> dims,
                         std::size_t max_dim = numal::kDefaultKronMaxDim);

}  // namespace gauge_rabi::quantum_ops
