#include <cmath>
#include <stdexcept>

#include "mf/errors.hpp"
#include "mf/numeric.hpp"

namespace mf::numeric {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    double rel_tol;
    int max_depth;
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const SimpsonState& st, double a, double b, double fa, double fm,
                     double fb, double whole, double scale, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * st.rel_tol * scale)
        return left + right + err / 15.0;
    if (depth >= st.max_depth)
        throw accuracy_error("quadrature: max refinement depth exceeded");
    return adaptive_step(st, a, m, fa, flm, fm, left, scale, depth + 1) +
           adaptive_step(st, m, b, fm, frm, fb, right, scale, depth + 1);
}

} // namespace

double quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(tol > 0.0))
        throw std::domain_error("quadrature: tol must be > 0");
    if (a == b)
        return 0.0;
    SimpsonState st{f, tol, 48};
    // scale from a coarse magnitude estimate so the relative criterion does
    // not collapse when the integral nearly cancels
    const int probes = 32;
    double amax = 0.0;
    for (int i = 0; i <= probes; ++i) {
        const double x = a + (b - a) * i / probes;
        amax = std::max(amax, std::abs(f(x)));
    }
    double scale = 0.01 * amax * std::abs(b - a);
    if (scale == 0.0)
        scale = 1.0;
    // start from several panels: a single panel can fool the two-level error
    // estimate on symmetric integrands
    const int panels = 8;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        const double fa = f(pa);
        const double fb = f(pb);
        const double fm = f(0.5 * (pa + pb));
        const double whole = simpson(fa, fm, fb, pa, pb);
        total += adaptive_step(st, pa, pb, fa, fm, fb, whole, scale, 0);
    }
    return total;
}

double quadrature_to_infinity(const std::function<double(double)>& f, double tol) {
    // rho = tan(phi) maps [0, inf) to [0, pi/2); decaying integrands stay
    // finite at the far endpoint (tan(pi/2) in doubles is ~1.6e16).
    auto g = [&f](double phi) {
        const double c = std::cos(phi);
        const double rho = std::tan(phi);
        const double val = f(rho);
        return val / (c * c);
    };
    return quadrature(g, 0.0, 1.57079632679489662, tol);
}

} // namespace mf::numeric
