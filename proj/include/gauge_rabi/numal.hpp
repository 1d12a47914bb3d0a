#pragma once

// Dense complex linear algebra: the matrix type every operator is carried
// in, Hermitian eigendecomposition, spectral matrix functions and tensor
// products.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace gauge_rabi::numal {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultKronMaxDim = 16384;

// Square, row-major, complex. The dimension is fixed at construction.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> diag);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    // Throws a config error when the rows do not form a square array.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
    static ComplexMatrix from_rows(const std::vector<std::vector<cplx>>& rows);

    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }
    std::span<cplx> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
    std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
// max |H - H^dagger|
double hermiticity_defect(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
cplx trace(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

struct EighOptions {
    double hermiticity_tol = 1e-10;   // relative to max|H|
    double offdiag_tol = 1e-14;       // relative to ||H||_F
    double degeneracy_tol = 1e-9;     // cluster width, scaled by 1 + |lambda|
    int max_sweeps = 60;
};

HermitianEigenSystem eigh(const ComplexMatrix& h, const EighOptions& opts = {});
std::vector<double> eigvalsh(const ComplexMatrix& h, const EighOptions& opts = {});

// V f(Lambda) V^dagger; the result is exactly Hermitian.
ComplexMatrix spectral_apply(const HermitianEigenSystem& es, const std::function<double(double)>& f);

struct CosSin {
    ComplexMatrix cos;
    ComplexMatrix sin;
};

CosSin matrix_cos_sin(const ComplexMatrix& h);
CosSin matrix_cos_sin(const HermitianEigenSystem& es);

// exp(iH)
ComplexMatrix matrix_unitary_exp(const ComplexMatrix& h);
ComplexMatrix matrix_unitary_exp(const HermitianEigenSystem& es);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = kDefaultKronMaxDim);

}  // namespace gauge_rabi::numal
