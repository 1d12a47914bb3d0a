#include "gauge_rabi/schrodinger1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gauge_rabi/error.hpp"

namespace gauge_rabi::schrodinger1d {

std::string to_string(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::quartic_double_well: return "quartic_double_well";
        case PotentialKind::tilted_quartic: return "tilted_quartic";
        case PotentialKind::harmonic: return "harmonic";
        case PotentialKind::tabulated: return "tabulated";
    }
    return "unknown";
}

PotentialKind potential_kind_from_string(const std::string& s) {
    if (s == "quartic_double_well") return PotentialKind::quartic_double_well;
    if (s == "tilted_quartic") return PotentialKind::tilted_quartic;
    if (s == "harmonic") return PotentialKind::harmonic;
    if (s == "tabulated") return PotentialKind::tabulated;
    throw config_error("potential_kind", "unknown potential kind '" + s + "'");
}

void PotentialSpec::validate() const {
    if (!(m > 0.0)) throw config_error("potential", "mass m must be > 0");
    if (!std::isfinite(q)) throw config_error("potential", "charge q must be finite");
    switch (kind) {
        case PotentialKind::quartic_double_well:
            if (tilt != 0.0) {
                throw config_error("potential",
                                   "quartic_double_well is symmetric; use tilted_quartic for tilt");
            }
            [[fallthrough]];
        case PotentialKind::tilted_quartic:
            if (!(V0 >= 0.0)) throw config_error("potential", "V0 must be >= 0");
            if (!(x0 > 0.0)) throw config_error("potential", "x0 must be > 0");
            if (!std::isfinite(tilt)) throw config_error("potential", "tilt must be finite");
            break;
        case PotentialKind::harmonic:
            if (!(omega > 0.0)) throw config_error("potential", "omega must be > 0");
            break;
        case PotentialKind::tabulated:
            if (samples.size() < 2) {
                throw config_error("potential", "tabulated potential needs >= 2 samples");
            }
            for (std::size_t i = 1; i < samples.size(); ++i) {
                if (!(samples[i].first > samples[i - 1].first)) {
                    throw config_error("potential", "tabulated x samples must be increasing");
                }
            }
            for (const auto& [x, vx] : samples) {
                if (!std::isfinite(x) || !std::isfinite(vx)) {
                    throw config_error("potential", "tabulated samples must be finite");
                }
            }
            break;
    }
}

double PotentialSpec::operator()(double x) const {
    switch (kind) {
        case PotentialKind::quartic_double_well:
        case PotentialKind::tilted_quartic: {
            const double u = (x / x0) * (x / x0) - 1.0;
            return V0 * u * u + tilt * x;
        }
        case PotentialKind::harmonic:
            return 0.5 * m * omega * omega * x * x;
        case PotentialKind::tabulated: {
            if (x < samples.front().first || x > samples.back().first) {
                throw config_error("tabulated_range",
                                   "grid point " + std::to_string(x) +
                                       " outside the tabulated potential range");
            }
            auto it = std::upper_bound(samples.begin(), samples.end(), x,
                                       [](double v, const auto& s) { return v < s.first; });
            if (it == samples.end()) return samples.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (x - lo.first) / (hi.first - lo.first);
            return (1.0 - w) * lo.second + w * hi.second;
        }
    }
    return 0.0;
}

void Grid1D::validate() const {
    if (!(x_min < x_max)) throw config_error("grid", "grid needs x_min < x_max");
    if (n < 64) throw config_error("grid", "grid needs n >= 64");
}

void TlsParams::validate() const {
    if (!(delta >= 0.0)) throw config_error("tls", "delta must be >= 0");
    if (!(a > 0.0)) throw config_error("tls", "a must be > 0");
    for (double v : {eps, t, q, x_L, x_R, mu, omega_q}) {
        if (!std::isfinite(v)) throw config_error("tls", "TLS parameters must be finite");
    }
    if (std::abs((x_R - x_L) - a) > 1e-9 * a) {
        throw config_error("tls", "site positions must satisfy x_R - x_L = a");
    }
}

double grid_inner(const std::vector<double>& f, const std::vector<double>& g, double h) {
    const std::size_t n = f.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * g[i];
    s -= 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    return s * h;
}

namespace {

// Symmetric tridiagonal matrix with a constant off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    double off = 0.0;

    std::size_t size() const { return diag.size(); }
    double norm() const {
        double r = 0.0;
        for (double d : diag) r = std::max(r, std::abs(d) + 2.0 * std::abs(off));
        return r;
    }
};

// Number of eigenvalues strictly below lambda (Sturm sequence).
std::size_t sturm_count(const Tridiagonal& t, double lambda) {
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    const double e2 = t.off * t.off;
    std::size_t count = 0;
    double qv = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        qv = t.diag[i] - lambda - (i == 0 ? 0.0 : e2 / qv);
        if (std::abs(qv) < tiny) qv = -tiny;
        if (qv < 0.0) ++count;
    }
    return count;
}

double bisect_eigenvalue(const Tridiagonal& t, std::size_t index, double lo, double hi) {
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Solves (T - shift I) x = b in place with partial pivoting.
void shifted_solve(const Tridiagonal& t, double shift, std::vector<double>& b) {
    const std::size_t n = t.size();
    std::vector<double> dl(n > 0 ? n - 1 : 0, t.off);
    std::vector<double> du(dl);
    std::vector<double> du2(n > 1 ? n - 2 : 0, 0.0);
    std::vector<double> d(n);
    std::vector<bool> swapped(n, false);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(t.norm(), 1e-300);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = true;
        }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!swapped[i]) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        if (ii + 1 < n) s -= du[ii] * b[ii + 1];
        if (ii + 2 < n) s -= du2[ii] * b[ii + 2];
        b[ii] = s / d[ii];
    }
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
}

// Inverse iteration, orthogonalized against the vectors found so far.
std::vector<double> eigenvector(const Tridiagonal& t, double lambda,
                                const std::vector<std::vector<double>>& previous) {
    const std::size_t n = t.size();
    std::vector<double> v(n);
    // Deterministic start vector with no special symmetry.
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
    normalize(v);
    for (int it = 0; it < 4; ++it) {
        shifted_solve(t, lambda, v);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : previous) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
            }
        }
        normalize(v);
    }
    return v;
}

// (H0 psi)_i with the 3-point Laplacian; zero at the walls.
std::vector<double> apply_h0(const std::vector<double>& psi, const std::vector<double>& vgrid,
                             double m, double h) {
    const std::size_t n = psi.size();
    std::vector<double> out(n, 0.0);
    const double kin = 1.0 / (2.0 * m * h * h);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = -kin * (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) + vgrid[i] * psi[i];
    return out;
}

std::vector<double> sample_potential(const PotentialSpec& v, const Grid1D& g) {
    std::vector<double> out(g.n);
    for (std::size_t i = 0; i < g.n; ++i) out[i] = v(g.x(i));
    return out;
}

}  // namespace

std::vector<BoundState> solve_bound_states(const PotentialSpec& v, const Grid1D& g,
                                           std::size_t k) {
    v.validate();
    g.validate();
    if (k < 2) throw config_error("state_count", "need at least 2 bound states");
    const std::size_t interior = g.n - 2;
    if (k > interior) {
        throw config_error("state_count", "requested " + std::to_string(k) +
                                              " states but the grid has only " +
                                              std::to_string(interior) + " interior points");
    }
    const double h = g.spacing();
    const auto vgrid = sample_potential(v, g);

    Tridiagonal t;
    t.off = -1.0 / (2.0 * v.m * h * h);
    t.diag.resize(interior);
    for (std::size_t i = 0; i < interior; ++i) t.diag[i] = 1.0 / (v.m * h * h) + vgrid[i + 1];

    double lo = t.diag[0];
    double hi = t.diag[0];
    for (double d : t.diag) {
        lo = std::min(lo, d - 2.0 * std::abs(t.off));
        hi = std::max(hi, d + 2.0 * std::abs(t.off));
    }

    std::vector<std::vector<double>> vecs;
    std::vector<BoundState> states;
    for (std::size_t idx = 0; idx < k; ++idx) {
        const double e = bisect_eigenvalue(t, idx, lo, hi);
        auto u = eigenvector(t, e, vecs);
        vecs.push_back(u);

        BoundState s;
        s.energy = e;
        s.psi.assign(g.n, 0.0);
        const double scale = 1.0 / std::sqrt(h);  // unit 2-norm -> sum psi^2 h = 1
        for (std::size_t i = 0; i < interior; ++i) s.psi[i + 1] = u[i] * scale;
        auto peak = std::max_element(s.psi.begin(), s.psi.end(), [](double x, double y) {
            return std::abs(x) < std::abs(y);
        });
        if (*peak < 0.0)
            for (double& x : s.psi) x = -x;

        const double pmax = std::abs(*peak);
        const double edge = std::max(std::abs(s.psi[1]), std::abs(s.psi[g.n - 2]));
        if (edge > 1e-6 * pmax) {
            throw numeric_error("boundary_leak",
                                "state " + std::to_string(idx) + " has boundary amplitude " +
                                    std::to_string(edge / pmax) +
                                    " of its peak; widen the grid");
        }
        states.push_back(std::move(s));
    }
    return states;
}

TlsParams reduce_to_tls(const std::vector<BoundState>& states, const PotentialSpec& v,
                        const Grid1D& g) {
    if (states.size() < 3) {
        throw config_error("state_count", "two-level reduction needs 3 states");
    }
    const double e0 = states[0].energy;
    const double e1 = states[1].energy;
    const double e2 = states[2].energy;
    const double wq = e1 - e0;
    if (!(wq > 1e-12 * std::abs(e2))) {
        throw numeric_error("degenerate_doublet",
                            "lowest doublet is degenerate (E1 - E0 = " + std::to_string(wq) +
                                "); two-level reduction is ill-defined");
    }

    const double h = g.spacing();
    const std::size_t n = g.n;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = g.x(i);

    const auto& s = states[0].psi;
    std::vector<double> a = states[1].psi;
    auto xmel = [&](const std::vector<double>& f, const std::vector<double>& gg) {
        std::vector<double> xg(n);
        for (std::size_t i = 0; i < n; ++i) xg[i] = xs[i] * gg[i];
        return grid_inner(f, xg, h);
    };
    double x_as = xmel(a, s);
    if (x_as < 0.0) {
        for (double& z : a) z = -z;
        x_as = -x_as;
    }
    const double x_ss = xmel(s, s);
    const double x_aa = xmel(a, a);

    // Diagonalize x inside span{S, A}: its eigenvectors are |R> (larger x)
    // and |L>, both with a positive |S> component.
    const double mean = 0.5 * (x_ss + x_aa);
    const double half_diff = 0.5 * (x_ss - x_aa);
    const double r = std::hypot(half_diff, x_as);
    if (!(r > 0.0)) throw numeric_error("zero_dipole", "position has no matrix element in the doublet");
    double cs;
    double ca;
    if (half_diff >= 0.0) {
        cs = r + half_diff;
        ca = x_as;
    } else {
        cs = x_as;
        ca = r - half_diff;
    }
    const double nrm = std::hypot(cs, ca);
    cs /= nrm;
    ca /= nrm;
    if (cs < 0.0 || (cs == 0.0 && ca < 0.0)) {
        cs = -cs;
        ca = -ca;
    }
    const double ls = ca >= 0.0 ? ca : -ca;
    const double la = ca >= 0.0 ? -cs : cs;

    std::vector<double> right(n);
    std::vector<double> left(n);
    for (std::size_t i = 0; i < n; ++i) {
        right[i] = cs * s[i] + ca * a[i];
        left[i] = ls * s[i] + la * a[i];
    }

    const auto vgrid = sample_potential(v, g);
    const auto h_right = apply_h0(right, vgrid, v.m, h);
    const auto h_left = apply_h0(left, vgrid, v.m, h);

    TlsParams p;
    p.q = v.q;
    p.t = -grid_inner(left, h_right, h);
    p.eps = grid_inner(right, h_right, h) - grid_inner(left, h_left, h);
    p.omega_q = wq;
    p.delta = std::sqrt(std::max(wq * wq - p.eps * p.eps, 0.0));
    p.x_R = mean + r;
    p.x_L = mean - r;
    p.a = p.x_R - p.x_L;
    p.mu = (e2 - 2.0 * e1 + e0) / wq;
    if (!(p.delta > 0.0)) {
        throw numeric_error("degenerate_doublet", "tunneling gap vanished in the reduction");
    }
    return p;
}

std::string to_string(Validity v) {
    switch (v) {
        case Validity::valid: return "valid";
        case Validity::marginal: return "marginal";
        case Validity::invalid: return "invalid";
    }
    return "unknown";
}

ValidityVerdict anharmonicity_check(const TlsParams& p, double eta) {
    ValidityVerdict out;
    const double e = std::abs(eta);
    if (e == 0.0) return out;
    if (!(p.mu > 0.0)) {
        out.verdict = Validity::invalid;
        out.ratio = std::numeric_limits<double>::infinity();
        return out;
    }
    out.ratio = e / p.mu;
    if (out.ratio < 0.1) {
        out.verdict = Validity::valid;
    } else if (out.ratio < 0.5) {
        out.verdict = Validity::marginal;
    } else {
        out.verdict = Validity::invalid;
    }
    return out;
}

}  // namespace gauge_rabi::schrodinger1d
