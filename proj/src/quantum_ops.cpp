#include "gauge_rabi/quantum_ops.hpp"

#include <cmath>
#include <string>

#include "gauge_rabi/error.hpp"

namespace gauge_rabi::quantum_ops {

using numal::cplx;

void FockSpace::validate() const {
    if (n_max < 2) {
        throw config_error("fock", "Fock truncation must be >= 2, got " + std::to_string(n_max));
    }
}

ComplexMatrix annihilation(const FockSpace& f) {
    f.validate();
    ComplexMatrix a(f.n_max);
    for (std::size_t n = 1; n < f.n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix creation(const FockSpace& f) { return annihilation(f).adjoint(); }

ComplexMatrix number(const FockSpace& f) {
    f.validate();
    ComplexMatrix m(f.n_max);
    for (std::size_t n = 0; n < f.n_max; ++n) m(n, n) = static_cast<double>(n);
    return m;
}

ComplexMatrix quadrature(const FockSpace& f) {
    f.validate();
    ComplexMatrix x(f.n_max);
    for (std::size_t n = 1; n < f.n_max; ++n) {
        const double s = std::sqrt(static_cast<double>(n));
        x(n - 1, n) = s;
        x(n, n - 1) = s;
    }
    return x;
}

namespace {

const cplx I{0.0, 1.0};

ComplexMatrix standard_pauli(Axis axis) {
    switch (axis) {
        case Axis::x: return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        case Axis::y: return ComplexMatrix::from_rows({{0.0, -I}, {I, 0.0}});
        case Axis::z: return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    }
    return ComplexMatrix(2);
}

}  // namespace

ComplexMatrix pauli(OperatorLabel label) {
    if (label.family == PauliFamily::sigma) return standard_pauli(label.axis);
    switch (label.axis) {
        case Axis::x: return -1.0 * standard_pauli(Axis::z);
        case Axis::y: return standard_pauli(Axis::y);
        case Axis::z: return standard_pauli(Axis::x);
    }
    return ComplexMatrix(2);
}

ComplexMatrix pauli_native(OperatorLabel label) { return standard_pauli(label.axis); }

ComplexMatrix rl_to_as_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    // |R> = (|A> + |S>)/sqrt2, |L> = (-|A> + |S>)/sqrt2
    return ComplexMatrix::from_rows({{r, -r}, {r, r}});
}

ComplexMatrix embed(const ComplexMatrix& tls_op, const ComplexMatrix& field_op,
                    std::size_t max_dim) {
    if (tls_op.dim() != 2) throw config_error("dim_mismatch", "embed: TLS operator must be 2x2");
    return numal::kron(tls_op, field_op, max_dim);
}

ComplexMatrix embed_mode(const ComplexMatrix& op, std::size_t index,
                         std::span<const std::size_t> dims, std::size_t max_dim) {
    if (index >= dims.size() || dims[index] != op.dim()) {
        throw config_error("dim_mismatch", "embed_mode: operator does not match mode slot");
    }
    std::size_t before = 1;
    std::size_t after = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k < index) before *= dims[k];
        if (k > index) after *= dims[k];
    }
    if (before * op.dim() * after > max_dim) {
        throw config_error("dim_overflow", "embed_mode: field dimension " +
                                               std::to_string(before * op.dim() * after) +
                                               " exceeds maximum " + std::to_string(max_dim));
    }
    ComplexMatrix out = numal::kron(ComplexMatrix::identity(before), op, max_dim);
    return numal::kron(out, ComplexMatrix::identity(after), max_dim);
}

}  // namespace gauge_rabi::quantum_ops
