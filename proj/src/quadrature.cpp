#include "gauge_rabi/quadrature.hpp"

#include <cmath>

namespace gauge_rabi::quadrature {

namespace {

struct Panel {
    double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Panels are always split this many times before the error test may accept
// them; otherwise an oscillating integrand that is periodic on the first few
// nodes (cos(kx) with k a multiple of 8 pi / (b - a)) is accepted unrefined.
constexpr int kMinLevels = 6;

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              int level, QuadratureResult& acc) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    acc.evaluations += 2;
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (depth <= 0 || (level >= kMinLevels && std::abs(delta) <= 15.0 * tol)) {
        acc.error_estimate += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1, level + 1, acc) +
           refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1, level + 1, acc);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    if (b < a) {
        out = adaptive_simpson(f, b, a, tol, max_depth);
        out.value = -out.value;
        return out;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    out.evaluations = 3;
    const double m = 0.5 * (a + b);
    const double q1 = 0.5 * (a + m);
    const double q3 = 0.5 * (m + b);
    const double fq1 = f(q1);
    const double fq3 = f(q3);
    out.evaluations += 2;
    out.value = refine(f, {a, m, fa, fq1, fm, simpson(a, m, fa, fq1, fm)}, 0.5 * tol, max_depth,
                       1, out) +
                refine(f, {m, b, fm, fq3, fb, simpson(m, b, fm, fq3, fb)}, 0.5 * tol, max_depth,
                       1, out);
    return out;
}

}  // namespace gauge_rabi::quadrature
