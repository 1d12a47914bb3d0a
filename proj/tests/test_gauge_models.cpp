#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "gauge_rabi/error.hpp"
#include "gauge_rabi/gauge_models.hpp"
#include "test_util.hpp"

using namespace gauge_rabi;
using namespace gauge_rabi::gauge_models;
using numal::eigvalsh;
using numal::max_abs_diff;
using quantum_ops::Axis;

namespace {

const cplx kI{0.0, 1.0};

ModelConfig make_cfg(double delta, double eps, double eta, double omega, std::size_t n,
                     Gauge gauge = Gauge::coulomb_gi) {
    ModelConfig cfg;
    cfg.tls.delta = delta;
    cfg.tls.eps = eps;
    cfg.tls.a = 1.0;
    cfg.tls.q = 1.0;
    ModeSpec m;
    m.omega_ph = omega;
    m.profile.amplitude = amplitude_for_eta(cfg.tls, eta);
    m.fock = {n};
    cfg.modes = {m};
    cfg.gauge = gauge;
    return cfg;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t k) {
    double d = 0.0;
    for (std::size_t i = 0; i < k; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Delta/2 sigma_z (x) I + I (x) omega n, or its detuned version.
ComplexMatrix bare(const ModelConfig& cfg) {
    const std::size_t n = cfg.modes[0].fock.n_max;
    const ComplexMatrix tls = (cfg.tls.eps / 2.0) * quantum_ops::rho(Axis::z) -
                              (cfg.tls.delta / 2.0) * quantum_ops::rho(Axis::x);
    return quantum_ops::embed(tls, ComplexMatrix::identity(n));
}

ComplexMatrix field(const ModelConfig& cfg) {
    const auto& m = cfg.modes[0];
    return quantum_ops::embed(ComplexMatrix::identity(2), m.omega_ph * quantum_ops::number(m.fock));
}

}  // namespace

TEST_CASE("string conversions round-trip") {
    for (auto g : {Gauge::coulomb_gi, Gauge::dipole, Gauge::coulomb_linearized}) {
        CHECK(gauge_from_string(to_string(g)) == g);
    }
    CHECK(to_string(Gauge::coulomb_linearized) == "coulomb_linearized");
    CHECK_THROWS_AS(gauge_from_string("coulomb"), Error);
    for (auto k : {ProfileKind::constant, ProfileKind::cosine, ProfileKind::tabulated}) {
        CHECK(profile_kind_from_string(to_string(k)) == k);
    }
}

TEST_CASE("eta is q a A0 / 2") {
    TlsParams tls;
    tls.delta = 1.0;
    tls.a = 1.7;
    tls.q = 0.6;
    CHECK(dipole_eta(tls, 0.9) == doctest::Approx(0.6 * 0.85 * 0.9).epsilon(1e-15));
    CHECK(dipole_eta(tls, amplitude_for_eta(tls, 0.37)) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("config validation") {
    auto cfg = make_cfg(1.0, 0.0, 0.1, 1.0, 8);
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.composite_dim() == 16);
    auto bad = cfg;
    bad.modes[0].omega_ph = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.modes.clear();
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.max_dim = 8;
    CHECK_THROWS_AS(h_dipole(bad), Error);
    bad = cfg;
    bad.modes.push_back(cfg.modes[0]);
    CHECK_THROWS_AS(h_coulomb_gi_symmetric(bad), Error);
    bad = cfg;
    bad.modes[0].fock = {1};
    try {
        h_dipole(bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("decoupled limit gives the bare ladder in every gauge") {
    const double delta = 1.3, omega = 0.7;
    const std::size_t n = 6;
    std::vector<double> expect;
    for (std::size_t k = 0; k < n; ++k) {
        expect.push_back(-delta / 2 + double(k) * omega);
        expect.push_back(delta / 2 + double(k) * omega);
    }
    std::sort(expect.begin(), expect.end());
    for (auto g : {Gauge::coulomb_gi, Gauge::dipole, Gauge::coulomb_linearized}) {
        const auto ev = eigvalsh(build_single_mode(make_cfg(delta, 0.0, 0.0, omega, n, g)));
        CHECK(max_diff(ev, expect, expect.size()) <= 1e-12);
    }
    const auto h = h_coulomb_gi_symmetric(make_cfg(delta, 0.0, 0.0, omega, n));
    CHECK(max_abs_diff(h, bare(make_cfg(delta, 0.0, 0.0, omega, n)) +
                              field(make_cfg(delta, 0.0, 0.0, omega, n))) <= 1e-15);
}

TEST_CASE("asymmetric bare TLS splits by sqrt(delta^2 + eps^2)") {
    for (double eps : {0.0, 0.5, 2.0}) {
        for (auto g : {Gauge::coulomb_gi, Gauge::dipole}) {
            const auto ev = eigvalsh(build_single_mode(make_cfg(1.0, eps, 0.0, 5.0, 3, g)));
            const double wq = std::sqrt(1.0 + eps * eps);
            CHECK(ev[0] == doctest::Approx(-wq / 2).epsilon(1e-12));
            CHECK(ev[1] == doctest::Approx(wq / 2).epsilon(1e-12));
        }
    }
}

TEST_CASE("all Hamiltonians are Hermitian") {
    for (auto g : {Gauge::coulomb_gi, Gauge::dipole, Gauge::coulomb_linearized}) {
        for (double eps : {0.0, 0.4}) {
            const auto h = build_single_mode(make_cfg(1.0, eps, 0.8, 1.1, 20, g));
            CHECK(numal::hermiticity_defect(h) <= 1e-12);
        }
    }
}

TEST_CASE("symmetric model is the rotated bare Hamiltonian") {
    for (std::size_t n : {4u, 16u, 40u}) {
        for (double eta : {0.1, 0.7, 1.5}) {
            const auto cfg = make_cfg(1.0, 0.0, eta, 1.0, n);
            const auto h = h_coulomb_gi_symmetric(cfg);
            const auto u = gauge_unitary(cfg, UnitaryFamily::sigma_x);
            // Independent of the library helper: conjugate by hand.
            const auto direct = u * bare(cfg) * u.adjoint() + field(cfg);
            CHECK(max_abs_diff(h, direct) <= 1e-10);
            CHECK(max_abs_diff(h, rotated_bare_hamiltonian(cfg, UnitaryFamily::sigma_x)) <= 1e-10);
        }
    }
}

TEST_CASE("asymmetric model is the rotated detuned Hamiltonian") {
    for (double eps : {0.3, -1.2}) {
        const auto cfg = make_cfg(0.9, eps, 0.6, 1.0, 24);
        const auto h = h_coulomb_gi_asymmetric(cfg);
        const auto u = gauge_unitary(cfg, UnitaryFamily::rho_z);
        CHECK(max_abs_diff(h, u * bare(cfg) * u.adjoint() + field(cfg)) <= 1e-10);
        // The symmetric builder hands detuned configs over.
        CHECK(max_abs_diff(h_coulomb_gi_symmetric(cfg), h) == 0.0);
    }
}

TEST_CASE("asymmetric builder at zero detuning matches the symmetric one") {
    const auto cfg = make_cfg(1.0, 0.0, 0.9, 1.0, 30);
    const auto hs = h_coulomb_gi_symmetric(cfg);
    const auto ha = h_coulomb_gi_asymmetric(cfg);
    CHECK(max_abs_diff(hs, ha) <= 1e-14);
    CHECK(max_diff(eigvalsh(hs), eigvalsh(ha), 60) <= 1e-10);
}

TEST_CASE("gauge unitary") {
    const auto c0 = make_cfg(1.0, 0.0, 0.0, 1.0, 10);
    CHECK(max_abs_diff(gauge_unitary(c0, UnitaryFamily::sigma_x), ComplexMatrix::identity(20)) <=
          1e-15);
    // sigma_x and rho_z coincide in the working basis.
    const auto cfg = make_cfg(1.0, 0.0, 0.8, 1.0, 24);
    const auto u = gauge_unitary(cfg, UnitaryFamily::sigma_x);
    CHECK(max_abs_diff(u, gauge_unitary(cfg, UnitaryFamily::rho_z)) == 0.0);
    CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(48)) <= 1e-12);
    CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(48)) <= 1e-12);
    // exp(i Phi (x) sigma_x / 2) from an independent matrix exponential.
    const auto gen = (cfg.modes[0].profile.amplitude * 0.5) *
                     quantum_ops::embed(quantum_ops::sigma(Axis::x),
                                        quantum_ops::quadrature(cfg.modes[0].fock));
    CHECK(max_abs_diff(u, numal::matrix_unitary_exp(gen)) <= 1e-10);

    const auto h = h_coulomb_gi_symmetric(cfg);
    CHECK(max_diff(eigvalsh(h), eigvalsh(u.adjoint() * h * u), 48) <= 1e-10);
}

TEST_CASE("dipole gauge with no tunnelling is a displaced oscillator") {
    for (double eta : {0.3, 1.0}) {
        const auto h = h_dipole(make_cfg(0.0, 0.0, eta, 1.3, 60, Gauge::dipole));
        const auto ev = eigvalsh(h);
        for (std::size_t k = 0; k < 16; ++k) {
            CHECK(std::abs(ev[k] - 1.3 * double(k / 2)) <= 1e-8);
        }
    }
}

TEST_CASE("dipole coupling term") {
    const auto cfg = make_cfg(1.0, 0.0, 0.4, 2.0, 8, Gauge::dipole);
    const auto& f = cfg.modes[0].fock;
    const auto a = quantum_ops::annihilation(f);
    const auto expect = bare(cfg) + field(cfg) +
                        quantum_ops::embed(quantum_ops::rho(Axis::z),
                                           cplx(0.0, -0.4 * 2.0) * (a - a.adjoint())) +
                        (0.16 * 2.0) * ComplexMatrix::identity(16);
    CHECK(max_abs_diff(h_dipole(cfg), expect) <= 1e-15);
}

TEST_CASE("linearized model deviates at second order in eta") {
    std::vector<double> dev;
    const std::vector<double> etas = {0.01, 0.02, 0.04};
    for (double eta : etas) {
        const auto gi = eigvalsh(h_coulomb_gi_symmetric(make_cfg(1.0, 0.0, eta, 1.0, 24)));
        const auto lin = eigvalsh(
            h_coulomb_linearized(make_cfg(1.0, 0.0, eta, 1.0, 24, Gauge::coulomb_linearized)));
        dev.push_back(max_diff(gi, lin, 6));
    }
    const double c = dev[1] / (etas[1] * etas[1]);
    CHECK(c > 0.0);
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const double ci = dev[i] / (etas[i] * etas[i]);
        CHECK(ci == doctest::Approx(c).epsilon(0.1));
    }
    const auto h0 = h_coulomb_linearized(make_cfg(1.0, 0.0, 0.0, 1.0, 8, Gauge::coulomb_linearized));
    CHECK(max_abs_diff(h0, h_coulomb_gi_symmetric(make_cfg(1.0, 0.0, 0.0, 1.0, 8))) <= 1e-15);
}

TEST_CASE("linearized model breaks gauge invariance at eta = 1") {
    const auto dip = eigvalsh(h_dipole(make_cfg(1.0, 0.0, 1.0, 1.0, 80, Gauge::dipole)));
    const auto lin = eigvalsh(
        h_coulomb_linearized(make_cfg(1.0, 0.0, 1.0, 1.0, 80, Gauge::coulomb_linearized)));
    const auto gi = eigvalsh(h_coulomb_gi_symmetric(make_cfg(1.0, 0.0, 1.0, 1.0, 80)));
    CHECK(std::abs(lin[0] - dip[0]) > 0.1);
    CHECK(std::abs(gi[0] - dip[0]) <= 1e-7);
}

TEST_CASE("gauge gap shrinks as the truncation doubles") {
    double prev = 1e300;
    for (std::size_t n : {8u, 16u, 32u, 64u}) {
        const auto gi = eigvalsh(h_coulomb_gi_symmetric(make_cfg(1.0, 0.0, 0.5, 1.0, n)));
        const auto dip = eigvalsh(h_dipole(make_cfg(1.0, 0.0, 0.5, 1.0, n, Gauge::dipole)));
        const double gap = max_diff(gi, dip, 6);
        CHECK(gap <= prev + 1e-12);
        prev = gap;
    }
    CHECK(prev <= 1e-8);
}

TEST_CASE("oversampled trig evaluation converges to the same spectrum") {
    auto cfg = make_cfg(1.0, 0.0, 0.5, 1.0, 48);
    const auto plain = eigvalsh(h_coulomb_gi_symmetric(cfg));
    cfg.trig_oversample = 16;
    const auto h = h_coulomb_gi_symmetric(cfg);
    CHECK(h.dim() == 96);
    CHECK(numal::hermiticity_defect(h) <= 1e-12);
    CHECK(max_diff(plain, eigvalsh(h), 6) <= 1e-8);
}

TEST_CASE("classical parallel transporter") {
    CHECK(parallel_transporter_classical([](double) { return 0.0; }, -0.5, 0.5, 1.0) == cplx(1.0));
    const double q = 0.8, a = 1.4, ac = 0.63;
    const auto u = parallel_transporter_classical([&](double) { return ac; }, -a / 2, a / 2, q);
    CHECK(std::abs(u - std::polar(1.0, q * a * ac)) <= 1e-14);
    ModeProfile constant;
    constant.amplitude = ac;
    CHECK(std::abs(parallel_transporter_classical(constant, -a / 2, a / 2, q) -
                   std::polar(1.0, q * a * ac)) <= 1e-14);

    // A -> A + d theta/dx multiplies by exp(iq theta(x_R)) ... exp(-iq theta(x_L)).
    auto theta = [](double x) { return 0.3 * x * x * x - 0.2 * x * x + 0.7 * x + 0.1; };
    auto dtheta = [](double x) { return 0.9 * x * x - 0.4 * x + 0.7; };
    auto field = [](double x) { return 0.5 * std::cos(2.0 * x + 0.3); };
    const double xl = -0.6, xr = 0.9;
    const auto u0 = parallel_transporter_classical(field, xl, xr, q);
    const auto u1 = parallel_transporter_classical(
        [&](double x) { return field(x) + dtheta(x); }, xl, xr, q);
    const cplx expect = std::polar(1.0, q * theta(xr)) * u0 * std::polar(1.0, -q * theta(xl));
    CHECK(std::abs(u1 - expect) <= 1e-10);
    CHECK(std::abs(std::abs(u1) - 1.0) <= 1e-15);
}

TEST_CASE("uniform two-site gauge change is a global phase") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d;
    std::vector<cplx> psi(10);
    for (auto& z : psi) z = {d(rng), d(rng)};
    const double q = 1.3, t0 = 0.77;
    const auto out = apply_two_site_gauge(psi, {t0, t0}, q);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        CHECK(std::abs(out[i] - std::polar(1.0, q * t0) * psi[i]) <= 1e-14);
    }
    CHECK_THROWS_AS(apply_two_site_gauge(std::vector<cplx>(3), {0.0, 0.0}, q), Error);
}

TEST_CASE("two-site gauge factorizes into a phase and a Bloch rotation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const TwoSiteGauge g{u(rng), u(rng)};
        const double q = u(rng);
        const auto m = two_site_gauge_operator(g, q);
        const std::vector<cplx> e0 = {1.0, 0.0}, e1 = {0.0, 1.0};
        const auto c0 = apply_two_site_gauge(e0, g, q);
        const auto c1 = apply_two_site_gauge(e1, g, q);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(std::abs(c0[i] - m(i, 0)) <= 1e-12);
            CHECK(std::abs(c1[i] - m(i, 1)) <= 1e-12);
        }
    }
}

TEST_CASE("transported hopping matrix elements are gauge invariant") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> d;
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    const double q = 0.9, a = 1.0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<cplx> psi(2), phi(2);
        for (auto& z : psi) z = {d(rng), d(rng)};
        for (auto& z : phi) z = {d(rng), d(rng)};
        const double ac = u(rng);
        const TwoSiteGauge g{u(rng), u(rng)};
        const cplx tr = std::polar(1.0, q * a * ac);
        const cplx tr2 = std::polar(1.0, q * g.theta_R) * tr * std::polar(1.0, -q * g.theta_L);
        auto element = [](const std::vector<cplx>& l, const ComplexMatrix& h,
                          const std::vector<cplx>& r) {
            cplx s{};
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) s += std::conj(l[i]) * h(i, j) * r[j];
            return s;
        };
        const cplx before = element(psi, transported_hopping(tr), phi);
        const cplx after = element(apply_two_site_gauge(psi, g, q), transported_hopping(tr2),
                                   apply_two_site_gauge(phi, g, q));
        CHECK(std::abs(before - after) <= 1e-10);
    }
    // U = 1: |R><L| + |L><R| is the native rho_x.
    CHECK(max_abs_diff(transported_hopping(1.0), quantum_ops::rho(Axis::x)) <= 1e-15);
}
