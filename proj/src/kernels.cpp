#include "gauge_rabi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gauge_rabi::kernels {

namespace {

// Plane rotation R = [[c, s e], [-s conj(e), c]] acting on columns (p, q)
// that annihilates a(p, q) of the Hermitian 2x2 pivot block.
struct Rotation {
    std::size_t p = 0;
    std::size_t q = 0;
    double c = 1.0;
    double s = 0.0;
    cplx e{1.0, 0.0};
    double app = 0.0;  // pivot diagonal after the rotation
    double aqq = 0.0;
    bool active = false;
};

Rotation make_rotation(std::size_t p, std::size_t q, double app, double aqq, cplx apq,
                       double skip_below) {
    Rotation r;
    r.p = p;
    r.q = q;
    const double g = std::abs(apq);
    if (g <= skip_below) return r;
    r.active = true;
    r.e = apq / g;
    const double tau = (aqq - app) / (2.0 * g);
    double t;
    if (std::abs(tau) > 1e150) {
        t = 0.5 / tau;
    } else {
        t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    r.app = app - t * g;
    r.aqq = aqq + t * g;
    return r;
}

double frobenius(std::span<const cplx> a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

double off_diagonal_norm(std::span<const cplx> a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a[i * n + j]);
    return std::sqrt(s);
}

void set_identity(std::span<cplx> v, std::size_t n) {
    std::fill(v.begin(), v.end(), cplx{});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
}

// x_p <- c x_p - s conj(e) x_q ;  x_q <- s e x_p + c x_q
inline void rotate_pair(cplx& xp, cplx& xq, const Rotation& r) {
    const cplx p0 = xp;
    const cplx q0 = xq;
    xp = r.c * p0 - r.s * std::conj(r.e) * q0;
    xq = r.s * r.e * p0 + r.c * q0;
}

}  // namespace

namespace serial {

void matmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c, std::size_t n) {
    std::fill(c.begin(), c.end(), cplx{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    }
}

JacobiStats jacobi_cyclic(std::span<cplx> a, std::span<cplx> v, std::size_t n, double rel_tol,
                          int max_sweeps) {
    JacobiStats stats;
    const bool want_vectors = !v.empty();
    if (want_vectors) set_identity(v, n);
    const double scale = frobenius(a);
    const double target = rel_tol * scale;
    const double skip_below = 1e-18 * scale;

    stats.off_norm = off_diagonal_norm(a, n);
    while (stats.off_norm > target && stats.sweeps < max_sweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Rotation r = make_rotation(p, q, a[p * n + p].real(), a[q * n + q].real(),
                                                 a[p * n + q], skip_below);
                if (!r.active) continue;
                // Column update on every other row, mirrored into the rows.
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    cplx kp = a[k * n + p];
                    cplx kq = a[k * n + q];
                    rotate_pair(kp, kq, r);
                    a[k * n + p] = kp;
                    a[k * n + q] = kq;
                    a[p * n + k] = std::conj(kp);
                    a[q * n + k] = std::conj(kq);
                }
                a[p * n + p] = r.app;
                a[q * n + q] = r.aqq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) rotate_pair(v[k * n + p], v[k * n + q], r);
                }
            }
        }
        ++stats.sweeps;
        stats.off_norm = off_diagonal_norm(a, n);
    }
    stats.converged = stats.off_norm <= target;
    return stats;
}

}  // namespace serial

namespace omp {

void matmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c, std::size_t n) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        cplx* ci = c.data() + i * n;
        std::fill(ci, ci + n, cplx{});
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            if (aik == cplx{}) continue;
            const cplx* bk = b.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
}

JacobiStats jacobi_round_robin(std::span<cplx> a, std::span<cplx> v, std::size_t n,
                               double rel_tol, int max_sweeps) {
    JacobiStats stats;
    const bool want_vectors = !v.empty();
    if (want_vectors) set_identity(v, n);
    const double scale = frobenius(a);
    const double target = rel_tol * scale;
    const double skip_below = 1e-18 * scale;

    // Circle-method tournament; index m - 1 is a bye when n is odd.
    const std::size_t m = n + (n % 2);
    const std::size_t half = m / 2;
    std::vector<Rotation> rots(half);
    const auto nn = static_cast<std::ptrdiff_t>(n);
    const auto nhalf = static_cast<std::ptrdiff_t>(half);

    stats.off_norm = off_diagonal_norm(a, n);
    while (n > 1 && stats.off_norm > target && stats.sweeps < max_sweeps) {
        for (std::size_t round = 0; round + 1 < m; ++round) {
            for (std::size_t i = 0; i < half; ++i) {
                std::size_t p;
                std::size_t q;
                if (i == 0) {
                    p = round;
                    q = m - 1;
                } else {
                    p = (round + i) % (m - 1);
                    q = (round + (m - 1) - i) % (m - 1);
                }
                if (p > q) std::swap(p, q);
                if (q >= n) {
                    rots[i] = Rotation{};
                    continue;
                }
                rots[i] = make_rotation(p, q, a[p * n + p].real(), a[q * n + q].real(),
                                        a[p * n + q], skip_below);
            }

            // A <- A R, row by row.
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t kk = 0; kk < nn; ++kk) {
                cplx* row = a.data() + static_cast<std::size_t>(kk) * n;
                for (const auto& r : rots)
                    if (r.active) rotate_pair(row[r.p], row[r.q], r);
            }
            // A <- R^dagger A, one pair of rows per rotation.
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t ii = 0; ii < nhalf; ++ii) {
                const Rotation& r = rots[static_cast<std::size_t>(ii)];
                if (!r.active) continue;
                cplx* rp = a.data() + r.p * n;
                cplx* rq = a.data() + r.q * n;
                const cplx se = r.s * r.e;
                const cplx sec = r.s * std::conj(r.e);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx x = rp[k];
                    const cplx y = rq[k];
                    rp[k] = r.c * x - se * y;
                    rq[k] = sec * x + r.c * y;
                }
            }
            for (const auto& r : rots) {
                if (!r.active) continue;
                a[r.p * n + r.p] = r.app;
                a[r.q * n + r.q] = r.aqq;
                a[r.p * n + r.q] = 0.0;
                a[r.q * n + r.p] = 0.0;
            }
            if (want_vectors) {
#pragma omp parallel for schedule(static)
                for (std::ptrdiff_t kk = 0; kk < nn; ++kk) {
                    cplx* row = v.data() + static_cast<std::size_t>(kk) * n;
                    for (const auto& r : rots)
                        if (r.active) rotate_pair(row[r.p], row[r.q], r);
                }
            }
        }
        ++stats.sweeps;
        stats.off_norm = off_diagonal_norm(a, n);
    }
    stats.converged = stats.off_norm <= target;
    return stats;
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gauge_rabi::kernels
