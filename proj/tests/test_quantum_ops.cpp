#include <cmath>

#include "doctest.h"
#include "gauge_rabi/error.hpp"
#include "gauge_rabi/quantum_ops.hpp"

using namespace gauge_rabi;
using namespace gauge_rabi::quantum_ops;
using numal::cplx;
using numal::max_abs_diff;

namespace {

const cplx kI{0.0, 1.0};

}  // namespace

TEST_CASE("annihilation operator matrix elements") {
    const auto a2 = annihilation({2});
    CHECK(a2 == ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));

    const FockSpace f{7};
    const auto a = annihilation(f);
    for (std::size_t i = 0; i < f.n_max; ++i) {
        for (std::size_t j = 0; j < f.n_max; ++j) {
            const cplx expect = (j == i + 1) ? cplx(std::sqrt(double(j))) : cplx(0.0);
            CHECK(a(i, j) == expect);
        }
    }
    CHECK(creation(f) == a.adjoint());
    CHECK(quadrature(f) == a + creation(f));
}

TEST_CASE("number operator is a^dagger a") {
    const FockSpace f{9};
    const auto n = creation(f) * annihilation(f);
    CHECK(max_abs_diff(n, number(f)) <= 1e-14 * double(f.n_max));
    for (std::size_t k = 0; k < f.n_max; ++k) CHECK(number(f)(k, k) == cplx(double(k)));
}

TEST_CASE("truncated commutator carries the top-state artifact") {
    for (std::size_t n : {2u, 5u, 16u}) {
        const FockSpace f{n};
        const auto a = annihilation(f);
        const auto c = numal::commutator(a, a.adjoint());
        ComplexMatrix expect = ComplexMatrix::identity(n);
        expect(n - 1, n - 1) -= double(n);
        CHECK(max_abs_diff(c, expect) <= 1e-13);
    }
}

TEST_CASE("Fock truncation below two is rejected") {
    CHECK_THROWS_AS(annihilation({1}), Error);
    try {
        number({0});
    } catch (const Error& e) {
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("Pauli matrices in the working basis") {
    CHECK(sigma(Axis::z) == ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));
    // sigma_y = -i(|A><S| - |S><A|)
    ComplexMatrix as(2), sa(2);
    as(0, 1) = 1.0;
    sa(1, 0) = 1.0;
    CHECK(sigma(Axis::y) == -kI * (as - sa));
    // rho_z = |A><S| + |S><A| = sigma_x
    CHECK(rho(Axis::z) == sigma(Axis::x));
    CHECK(rho(Axis::x) == -1.0 * sigma(Axis::z));
    CHECK(rho(Axis::y) == sigma(Axis::y));

    for (auto fam : {PauliFamily::sigma, PauliFamily::rho}) {
        for (auto ax : {Axis::x, Axis::y, Axis::z}) {
            const auto p = pauli({fam, ax});
            CHECK(p == p.adjoint());
            CHECK(numal::trace(p) == cplx(0.0));
            CHECK(p * p == ComplexMatrix::identity(2));
        }
    }
}

TEST_CASE("Pauli algebra is exact") {
    const auto x = sigma(Axis::x), y = sigma(Axis::y), z = sigma(Axis::z);
    CHECK(x * y == kI * z);
    CHECK(y * z == kI * x);
    CHECK(z * x == kI * y);
    const auto rx = rho(Axis::x), ry = rho(Axis::y), rz = rho(Axis::z);
    CHECK(rx * ry == kI * rz);
    CHECK(ry * rz == kI * rx);
    CHECK(rz * rx == kI * ry);
}

TEST_CASE("rho family is the native Pauli set in the localized basis") {
    const auto b = rl_to_as_basis();
    CHECK(max_abs_diff(b * b.adjoint(), ComplexMatrix::identity(2)) <= 1e-15);
    for (auto ax : {Axis::x, Axis::y, Axis::z}) {
        const auto native = pauli_native({PauliFamily::rho, ax});
        CHECK(max_abs_diff(b * native * b.adjoint(), rho(ax)) <= 1e-15);
        CHECK(pauli_native({PauliFamily::sigma, ax}) == sigma(ax));
    }
    // rho_z |R> = |R>, rho_z |L> = -|L>
    const auto rz = rho(Axis::z);
    for (std::size_t i = 0; i < 2; ++i) {
        const cplx r = rz(i, 0) * b(0, 0) + rz(i, 1) * b(1, 0);
        const cplx l = rz(i, 0) * b(0, 1) + rz(i, 1) * b(1, 1);
        CHECK(std::abs(r - b(i, 0)) <= 1e-15);
        CHECK(std::abs(l + b(i, 1)) <= 1e-15);
    }
}

TEST_CASE("embed places the TLS factor first") {
    const FockSpace f{4};
    CHECK(embed(ComplexMatrix::identity(2), ComplexMatrix::identity(4)) ==
          ComplexMatrix::identity(8));
    const auto sz = embed(sigma(Axis::z), ComplexMatrix::identity(4));
    const auto n = embed(ComplexMatrix::identity(2), number(f));
    CHECK(numal::max_abs(numal::commutator(sz, n)) == 0.0);
    // TLS index is the slow one: entry (i_tls * N + n, j_tls * N + m).
    const auto e = embed(sigma(Axis::x), annihilation(f));
    CHECK(e(0 * 4 + 0, 1 * 4 + 1) == cplx(1.0));
    CHECK(e(1 * 4 + 2, 0 * 4 + 3) == cplx(std::sqrt(3.0)));
    const auto h = embed(sigma(Axis::y), quadrature(f));
    CHECK(numal::hermiticity_defect(h) == 0.0);
}

TEST_CASE("embed rejects bad shapes and oversize products") {
    CHECK_THROWS_AS(embed(ComplexMatrix::identity(3), ComplexMatrix::identity(2)), Error);
    CHECK_THROWS_AS(embed(sigma(Axis::z), ComplexMatrix::identity(10), 16), Error);
}

TEST_CASE("embed_mode orders field factors by mode index") {
    const std::size_t dims[] = {3, 4};
    const auto n0 = embed_mode(number({3}), 0, dims);
    const auto n1 = embed_mode(number({4}), 1, dims);
    CHECK(n0 == numal::kron(number({3}), ComplexMatrix::identity(4)));
    CHECK(n1 == numal::kron(ComplexMatrix::identity(3), number({4})));
    CHECK(numal::max_abs(numal::commutator(n0, n1)) == 0.0);
    CHECK_THROWS_AS(embed_mode(number({3}), 1, dims), Error);
    CHECK_THROWS_AS(embed_mode(number({3}), 0, dims, 8), Error);
}
