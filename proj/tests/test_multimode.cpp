#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gauge_rabi/error.hpp"
#include "gauge_rabi/multimode.hpp"
#include "gauge_rabi/quadrature.hpp"

using namespace gauge_rabi;
using namespace gauge_rabi::multimode;
using gauge_models::ProfileKind;
using numal::eigvalsh;
using numal::max_abs_diff;
using quantum_ops::Axis;

namespace {

constexpr double kPi = std::numbers::pi;

TlsParams make_tls(double a, double q, double delta = 1.0) {
    TlsParams t;
    t.delta = delta;
    t.a = a;
    t.q = q;
    t.x_L = -a / 2;
    t.x_R = a / 2;
    return t;
}

ModeProfile cosine(double a0, double k, double phi0 = 0.0) {
    ModeProfile p;
    p.kind = ProfileKind::cosine;
    p.amplitude = a0;
    p.k = k;
    p.phi0 = phi0;
    return p;
}

ModeSpec mode(double omega, ModeProfile p, std::size_t n) {
    ModeSpec m;
    m.omega_ph = omega;
    m.profile = std::move(p);
    m.fock = {n};
    return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace

TEST_CASE("adaptive Simpson") {
    using quadrature::adaptive_simpson;
    // Cubics are integrated exactly.
    auto cubic = [](double x) { return 2 * x * x * x - x + 0.5; };
    CHECK(adaptive_simpson(cubic, -1.0, 2.0).value == doctest::Approx(7.5).epsilon(1e-14));
    CHECK(adaptive_simpson(cubic, 2.0, -1.0).value == doctest::Approx(-7.5).epsilon(1e-14));
    CHECK(adaptive_simpson(cubic, 1.0, 1.0).value == 0.0);
    const auto r = adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, 3.0);
    CHECK(std::abs(r.value - 0.5 * std::sqrt(kPi) * std::erf(3.0)) <= 1e-12);
    // Periodic on every initial node.
    const double k = 16 * kPi;
    const auto osc = adaptive_simpson([&](double x) { return std::cos(k * x); }, -0.5, 0.5);
    CHECK(std::abs(osc.value - 2 * std::sin(k / 2) / k) <= 1e-12);
}

TEST_CASE("constant profile gives the dipole coupling exactly") {
    const auto tls = make_tls(1.3, 0.7);
    ModeProfile p;
    p.amplitude = 0.45;
    CHECK(coupling_integral(p, tls) == gauge_models::dipole_eta(tls, 0.45));
    // Same through quadrature with a flat table.
    p.kind = ProfileKind::tabulated;
    p.samples = {{-1.0, 0.45}, {0.0, 0.45}, {1.0, 0.45}};
    CHECK(coupling_integral(p, tls) == doctest::Approx(0.7 * 0.65 * 0.45).epsilon(1e-13));
}

TEST_CASE("cosine profile matches the closed form") {
    const double q = 1.1, a0 = 0.8;
    for (double a : {0.5, 1.0, 2.3}) {
        const auto tls = make_tls(a, q);
        for (double k : {1e-3, 0.4, 1.7, 6.0, 25.0}) {
            const double analytic = q * a0 * std::sin(k * a / 2) / k;
            CHECK(std::abs(coupling_integral(cosine(a0, k), tls) - analytic) <= 1e-10);
        }
    }
    // Zeros at k a = 2 pi m.
    const auto tls = make_tls(1.0, q);
    for (int m = 1; m <= 4; ++m) {
        CHECK(std::abs(coupling_integral(cosine(a0, 2 * kPi * m), tls)) <= 1e-10);
    }
    // Long-wavelength limit approaches the dipole value.
    CHECK(coupling_integral(cosine(a0, 0.01), tls) ==
          doctest::Approx(gauge_models::dipole_eta(tls, a0)).epsilon(0.01));
}

TEST_CASE("coupling integral follows the site positions") {
    auto tls = make_tls(1.5, 1.0);
    tls.x_L = -0.25;
    tls.x_R = 1.25;
    const auto p = cosine(1.0, 0.9, 0.4);
    const double analytic = 0.5 * (std::sin(0.9 * 1.25 + 0.4) - std::sin(0.9 * -0.25 + 0.4)) / 0.9;
    CHECK(std::abs(coupling_integral(p, tls) - analytic) <= 1e-12);
    tls.x_R = 1.0;
    CHECK_THROWS_AS(coupling_integral(p, tls), Error);
}

TEST_CASE("tabulated profile must cover the sites") {
    const auto tls = make_tls(1.0, 1.0);
    ModeProfile p;
    p.kind = ProfileKind::tabulated;
    p.amplitude = 1.0;
    p.samples = {{-0.2, 1.0}, {0.6, 1.0}};
    CHECK_THROWS_AS(coupling_integral(p, tls), Error);
}

TEST_CASE("cutoff scan") {
    const double q = 1.0, a0 = 0.5, a = 1.0;
    const auto tls = make_tls(a, q);
    const auto rows = cutoff_scan(tls, cosine(a0, 0.0), 0.1, 30.0, 300);
    REQUIRE(rows.size() == 300);
    CHECK(std::is_sorted(rows.begin(), rows.end(),
                         [](const CutoffRow& l, const CutoffRow& r) { return l.k < r.k; }));
    for (const auto& r : rows) {
        CHECK(std::abs(r.eta_k - q * a0 * std::sin(r.k * a / 2) / r.k) <= 1e-10);
        CHECK(std::abs(r.eta_k) <= q * a0 / r.k + 1e-12);
    }
    // Envelope over [K, 2K] does not grow once K a > pi.
    auto window_max = [&](double kk) {
        const auto w = cutoff_scan(tls, cosine(a0, 0.0), kk, 2 * kk, 400);
        double m = 0.0;
        for (const auto& r : w) m = std::max(m, std::abs(r.eta_k));
        return m;
    };
    double prev = 1e300;
    for (double kk = 3.3; kk < 30.0; kk *= 1.3) {
        const double m = window_max(kk);
        CHECK(m <= prev + 1e-12);
        prev = m;
    }

    const double ks[] = {3.0, 1.0, 2.0};
    const auto unsorted = cutoff_scan(tls, cosine(a0, 0.0), ks);
    CHECK(unsorted[0].k == 1.0);
    CHECK(unsorted[2].k == 3.0);
    CHECK_THROWS_AS(cutoff_scan(tls, cosine(a0, 0.0), 2.0, 1.0, 5), Error);
    ModeProfile flat;
    CHECK_THROWS_AS(cutoff_scan(tls, flat, ks), Error);
}

TEST_CASE("cutoff CSV format") {
    const CutoffRow rows[] = {{0.5, 0.123456789012345}, {1.0, -2e-17}};
    CHECK(cutoff_csv(rows) == "k,eta_k\n0.5,0.123456789012\n1,-2e-17\n");
}

TEST_CASE("single constant mode reproduces the single-mode builder") {
    const auto tls = make_tls(1.0, 1.0);
    ModeProfile p;
    p.amplitude = 1.2;
    const ModeSpec modes[] = {mode(0.9, p, 20)};
    const auto h = h_multimode_gi(tls, modes);

    gauge_models::ModelConfig cfg;
    cfg.tls = tls;
    cfg.modes = {modes[0]};
    CHECK(max_abs_diff(h, gauge_models::h_coulomb_gi_symmetric(cfg)) <= 1e-14);
}

TEST_CASE("decoupled multimode spectrum") {
    const auto tls = make_tls(1.0, 1.0, 1.4);
    const ModeSpec modes[] = {mode(1.0, cosine(0.0, 1.0), 4), mode(1.7, cosine(0.0, 2.0), 3)};
    std::vector<double> expect;
    for (int s : {-1, 1})
        for (int n1 = 0; n1 < 4; ++n1)
            for (int n2 = 0; n2 < 3; ++n2) expect.push_back(s * 0.7 + n1 * 1.0 + n2 * 1.7);
    std::sort(expect.begin(), expect.end());
    CHECK(max_diff(eigvalsh(h_multimode_gi(tls, modes)), expect) <= 1e-12);
}

TEST_CASE("two-mode Hamiltonian is the rotated bare Hamiltonian") {
    const auto tls = make_tls(1.0, 1.0);
    const ModeSpec modes[] = {mode(1.0, cosine(1.2, 0.8), 12), mode(1.6, cosine(0.9, 3.1), 12)};
    const auto h = h_multimode_gi(tls, modes);
    CHECK(h.dim() == 288);
    CHECK(numal::hermiticity_defect(h) <= 1e-12);
    const auto u = multimode_gauge_unitary(tls, modes);
    CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(288)) <= 1e-12);
    CHECK(max_abs_diff(h, multimode_rotated_bare(tls, modes)) <= 1e-10);
    CHECK(max_diff(eigvalsh(h), eigvalsh(u.adjoint() * h * u)) <= 1e-10);
}

TEST_CASE("detuned multimode model") {
    auto tls = make_tls(1.0, 1.0);
    tls.eps = 0.6;
    const ModeSpec modes[] = {mode(1.0, cosine(0.7, 0.5), 8), mode(1.3, cosine(0.4, 1.5), 6)};
    CHECK(max_abs_diff(h_multimode_gi(tls, modes), multimode_rotated_bare(tls, modes)) <= 1e-10);
    // One mode: same matrix as the asymmetric single-mode builder.
    gauge_models::ModelConfig cfg;
    cfg.tls = tls;
    cfg.modes = {modes[0]};
    cfg.dipole_approx = false;
    CHECK(max_abs_diff(h_multimode_gi(tls, std::span(modes, 1)),
                       gauge_models::h_coulomb_gi_asymmetric(cfg)) <= 1e-12);
}

TEST_CASE("a silent mode only adds its own ladder") {
    const auto tls = make_tls(1.0, 1.0);
    const ModeSpec live = mode(1.0, cosine(1.1, 0.7), 12);
    // k a = 2 pi: coupling integral vanishes.
    const ModeSpec silent = mode(1.5, cosine(0.9, 2 * kPi), 12);
    const ModeSpec both[] = {live, silent};
    const auto etas = mode_couplings(tls, both);
    CHECK(std::abs(etas[1]) <= 1e-10);

    std::vector<double> single = eigvalsh(h_multimode_gi(tls, std::span(both, 1)));
    std::vector<double> expect;
    for (double e : single)
        for (int n = 0; n < 12; ++n) expect.push_back(e + 1.5 * n);
    std::sort(expect.begin(), expect.end());
    CHECK(max_diff(eigvalsh(h_multimode_gi(tls, both)), expect) <= 1e-10);
}

TEST_CASE("mode order does not change the spectrum") {
    const auto tls = make_tls(1.0, 1.0);
    const ModeSpec m1 = mode(1.0, cosine(1.0, 0.6), 8);
    const ModeSpec m2 = mode(1.4, cosine(0.8, 2.2), 6);
    const ModeSpec fwd[] = {m1, m2};
    const ModeSpec rev[] = {m2, m1};
    CHECK(max_diff(eigvalsh(h_multimode_gi(tls, fwd)), eigvalsh(h_multimode_gi(tls, rev))) <=
          1e-10);
}

TEST_CASE("field trig satisfies the Pythagorean identity") {
    const ModeSpec modes[] = {mode(1.0, {}, 7), mode(1.0, {}, 5)};
    const double etas[] = {0.8, -0.3};
    const auto t = field_trig(modes, etas);
    const auto id = ComplexMatrix::identity(35);
    CHECK(max_abs_diff(t.cos * t.cos + t.sin * t.sin, id) <= 1e-12);
    CHECK(numal::max_abs(numal::commutator(t.cos, t.sin)) <= 1e-12);
    // Compare with the spectral functions of the full two-mode quadrature sum.
    const std::size_t dims[] = {7, 5};
    const auto phi = (2 * 0.8) * quantum_ops::embed_mode(quantum_ops::quadrature({7}), 0, dims) +
                     (2 * -0.3) * quantum_ops::embed_mode(quantum_ops::quadrature({5}), 1, dims);
    const auto direct = numal::matrix_cos_sin(phi);
    CHECK(max_abs_diff(t.cos, direct.cos) <= 1e-11);
    CHECK(max_abs_diff(t.sin, direct.sin) <= 1e-11);
}

TEST_CASE("dimension cap") {
    const auto tls = make_tls(1.0, 1.0);
    const ModeSpec modes[] = {mode(1.0, {}, 64), mode(1.0, {}, 64), mode(1.0, {}, 4)};
    CHECK_THROWS_AS(h_multimode_gi(tls, modes), Error);
    MultimodeOptions o;
    o.max_dim = 100;
    const ModeSpec small[] = {mode(1.0, {}, 8), mode(1.0, {}, 8)};
    try {
        h_multimode_gi(tls, small, o);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "dim_overflow");
        CHECK(e.exit_code() == 2);
    }
}
