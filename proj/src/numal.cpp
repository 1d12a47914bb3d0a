#include "gauge_rabi/numal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gauge_rabi/error.hpp"
#include "gauge_rabi/kernels.hpp"

namespace gauge_rabi::numal {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    std::vector<std::vector<cplx>> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<cplx>>& rows) {
    const std::size_t n = rows.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw config_error("non_square", "matrix row " + std::to_string(i) + " has " +
                                                 std::to_string(rows[i].size()) +
                                                 " entries, expected " + std::to_string(n));
        }
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw config_error("dim_mismatch", std::string(op) + ": dimension mismatch " +
                                               std::to_string(a.dim()) + " vs " +
                                               std::to_string(b.dim()));
    }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    ComplexMatrix c(a.dim());
    kernels::omp::matmul(a.data(), b.data(), c.data(), a.dim());
    return c;
}

double max_abs(const ComplexMatrix& m) {
    double r = 0.0;
    for (const auto& z : m.data()) r = std::max(r, std::abs(z));
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double r = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        r = std::max(r, std::abs(a.data()[i] - b.data()[i]));
    return r;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
    return r;
}

bool all_finite(const ComplexMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const cplx& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

cplx trace(const ComplexMatrix& m) {
    cplx t{};
    for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

namespace {

ComplexMatrix checked_hermitian_copy(const ComplexMatrix& h, const EighOptions& opts) {
    if (h.empty()) throw config_error("empty_matrix", "eigh: empty matrix");
    if (!all_finite(h)) throw numeric_error("non_finite", "eigh: matrix has NaN/Inf entries");
    const double scale = max_abs(h);
    const double defect = hermiticity_defect(h);
    if (defect > opts.hermiticity_tol * scale) {
        throw numeric_error("not_hermitian",
                            "eigh: |H - H^dagger|_max = " + std::to_string(defect) +
                                " exceeds tolerance (max|H| = " + std::to_string(scale) + ")");
    }
    ComplexMatrix a(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < h.dim(); ++j) {
            const cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    return a;
}

kernels::JacobiStats diagonalize(ComplexMatrix& a, std::span<cplx> v, const EighOptions& opts) {
    auto stats = kernels::omp::jacobi_round_robin(a.data(), v, a.dim(), opts.offdiag_tol,
                                                  opts.max_sweeps);
    if (!stats.converged) {
        throw numeric_error("eigh_no_convergence",
                            "eigh: Jacobi did not converge in " + std::to_string(stats.sweeps) +
                                " sweeps (off-diagonal mass " + std::to_string(stats.off_norm) +
                                ")");
    }
    return stats;
}

std::vector<std::size_t> ascending_order(const ComplexMatrix& a) {
    std::vector<std::size_t> order(a.dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    return order;
}

// Replace the columns [first, last) of v, which span one eigenvalue cluster,
// by the Gram-Schmidt orthonormalization of the projected unit vectors
// P e_0, P e_1, ... taken in index order.
void canonicalize_cluster(ComplexMatrix& v, std::size_t first, std::size_t last) {
    const std::size_t n = v.dim();
    const std::size_t m = last - first;
    std::vector<std::vector<cplx>> basis;
    basis.reserve(m);
    std::vector<bool> used(n, false);

    auto residual = [&](std::size_t j) {
        std::vector<cplx> w(n);
        for (std::size_t l = first; l < last; ++l) {
            const cplx c = std::conj(v(j, l));
            for (std::size_t i = 0; i < n; ++i) w[i] += v(i, l) * c;
        }
        // Two passes of classical Gram-Schmidt.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                cplx dot{};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(u[i]) * w[i];
                for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u[i];
            }
        }
        return w;
    };
    auto norm_of = [](const std::vector<cplx>& w) {
        double s = 0.0;
        for (const auto& z : w) s += std::norm(z);
        return std::sqrt(s);
    };
    auto accept = [&](std::vector<cplx> w, double nrm, std::size_t j) {
        for (auto& z : w) z /= nrm;
        basis.push_back(std::move(w));
        used[j] = true;
    };

    constexpr double kAcceptNorm = 1e-3;
    for (std::size_t j = 0; j < n && basis.size() < m; ++j) {
        // |P e_j| bounds the orthogonalized residual from above.
        double proj = 0.0;
        for (std::size_t l = first; l < last; ++l) proj += std::norm(v(j, l));
        if (proj <= kAcceptNorm * kAcceptNorm) continue;
        auto w = residual(j);
        const double nrm = norm_of(w);
        if (nrm > kAcceptNorm) accept(std::move(w), nrm, j);
    }
    // Fallback for very spread-out subspaces: take the largest residual.
    while (basis.size() < m) {
        double best = -1.0;
        std::size_t best_j = 0;
        std::vector<cplx> best_w;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            auto w = residual(j);
            const double nrm = norm_of(w);
            if (nrm > best) {
                best = nrm;
                best_j = j;
                best_w = std::move(w);
            }
        }
        accept(std::move(best_w), best, best_j);
    }
    for (std::size_t l = 0; l < m; ++l)
        for (std::size_t i = 0; i < n; ++i) v(i, first + l) = basis[l][i];
}

}  // namespace

HermitianEigenSystem eigh(const ComplexMatrix& h, const EighOptions& opts) {
    ComplexMatrix a = checked_hermitian_copy(h, opts);
    const std::size_t n = a.dim();
    ComplexMatrix raw(n);
    diagonalize(a, raw.data(), opts);

    const auto order = ascending_order(a);
    HermitianEigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        es.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, k) = raw(i, order[k]);
    }

    std::size_t first = 0;
    while (first < n) {
        std::size_t last = first + 1;
        while (last < n && es.eigenvalues[last] - es.eigenvalues[last - 1] <=
                               opts.degeneracy_tol * (1.0 + std::abs(es.eigenvalues[last]))) {
            ++last;
        }
        canonicalize_cluster(es.eigenvectors, first, last);
        first = last;
    }
    return es;
}

std::vector<double> eigvalsh(const ComplexMatrix& h, const EighOptions& opts) {
    ComplexMatrix a = checked_hermitian_copy(h, opts);
    diagonalize(a, {}, opts);
    std::vector<double> ev(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

namespace {

// V diag(f) V^dagger with complex weights; lower triangle computed, upper
// mirrored when `hermitian` is set.
ComplexMatrix weighted_outer(const ComplexMatrix& v, const std::vector<cplx>& f, bool hermitian) {
    const std::size_t n = v.dim();
    ComplexMatrix w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) w(i, k) = v(i, k) * f[k];
    ComplexMatrix out(n);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const std::size_t jmax = hermitian ? i + 1 : n;
        for (std::size_t j = 0; j < jmax; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k) s += w(i, k) * std::conj(v(j, k));
            out(i, j) = s;
        }
    }
    if (hermitian) {
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = out(i, i).real();
            for (std::size_t j = 0; j < i; ++j) out(j, i) = std::conj(out(i, j));
        }
    }
    return out;
}

}  // namespace

ComplexMatrix spectral_apply(const HermitianEigenSystem& es,
                             const std::function<double(double)>& f) {
    std::vector<cplx> w(es.eigenvalues.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = f(es.eigenvalues[k]);
    return weighted_outer(es.eigenvectors, w, true);
}

CosSin matrix_cos_sin(const HermitianEigenSystem& es) {
    return {spectral_apply(es, [](double x) { return std::cos(x); }),
            spectral_apply(es, [](double x) { return std::sin(x); })};
}

CosSin matrix_cos_sin(const ComplexMatrix& h) { return matrix_cos_sin(eigh(h)); }

ComplexMatrix matrix_unitary_exp(const HermitianEigenSystem& es) {
    std::vector<cplx> w(es.eigenvalues.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::polar(1.0, es.eigenvalues[k]);
    return weighted_outer(es.eigenvectors, w, false);
}

ComplexMatrix matrix_unitary_exp(const ComplexMatrix& h) { return matrix_unitary_exp(eigh(h)); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dim) {
    const std::size_t p = b.dim();
    const std::size_t n = a.dim() * p;
    if (a.dim() != 0 && n / a.dim() != p) throw config_error("dim_overflow", "kron: size overflow");
    if (n > max_dim) {
        throw config_error("dim_overflow", "kron: product dimension " + std::to_string(n) +
                                               " exceeds maximum " + std::to_string(max_dim));
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = 0; l < p; ++l) out(i * p + k, j * p + l) = aij * b(k, l);
        }
    }
    return out;
}

}  // namespace gauge_rabi::numal
