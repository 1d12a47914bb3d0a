#pragma once

// Inner loops of the dense solver. Every kernel exists twice: a plain serial
// reference and an OpenMP version. Library code calls the OpenMP path; the
// serial one is kept for cross-checks and for the benchmark.

#include <complex>
#include <cstddef>
#include <span>

namespace gauge_rabi::kernels {

using cplx = std::complex<double>;

struct JacobiStats {
    int sweeps = 0;
    double off_norm = 0.0;  // Frobenius mass of the off-diagonal part at exit
    bool converged = false;
};

namespace serial {

// c = a * b, all n x n row-major.
void matmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c, std::size_t n);

// Cyclic-by-rows Jacobi on a Hermitian matrix, in place. On exit the
// diagonal of `a` holds the eigenvalues and, when `v` is non-empty, its
// columns the eigenvectors (v is overwritten, starting from identity).
// Stops when off-diagonal Frobenius mass <= rel_tol * ||a||_F.
JacobiStats jacobi_cyclic(std::span<cplx> a, std::span<cplx> v, std::size_t n, double rel_tol,
                          int max_sweeps);

}  // namespace serial

namespace omp {

void matmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c, std::size_t n);

// Same contract as serial::jacobi_cyclic, but each sweep runs in the
// round-robin ordering: n/2 disjoint rotations per step, applied in
// parallel. Output is bitwise independent of the thread count.
JacobiStats jacobi_round_robin(std::span<cplx> a, std::span<cplx> v, std::size_t n,
                               double rel_tol, int max_sweeps);

}  // namespace omp

int max_threads();

}  // namespace gauge_rabi::kernels
