#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mf/errors.hpp"
#include "mf/numeric.hpp"

namespace mf::numeric {

namespace {

// The fermionic partner potential is a sum of terms P(l) rho^a (1+rho^2)^b
// with P quadratic in l. Differentiation in rho and in l stays inside this
// family, which gives exact derivatives for the Newton iteration.
struct Term {
    std::array<double, 3> poly; // poly[0] + poly[1] l + poly[2] l^2
    int a;
    int b;
};
using TermSum = std::vector<Term>;

TermSum d_rho(const TermSum& s) {
    TermSum out;
    out.reserve(2 * s.size());
    for (const Term& t : s) {
        if (t.a != 0)
            out.push_back({{t.poly[0] * t.a, t.poly[1] * t.a, t.poly[2] * t.a}, t.a - 1, t.b});
        if (t.b != 0)
            out.push_back(
                {{2.0 * t.poly[0] * t.b, 2.0 * t.poly[1] * t.b, 2.0 * t.poly[2] * t.b},
                 t.a + 1,
                 t.b - 1});
    }
    return out;
}

TermSum d_l(const TermSum& s) {
    TermSum out;
    out.reserve(s.size());
    for (const Term& t : s) {
        if (t.poly[1] != 0.0 || t.poly[2] != 0.0)
            out.push_back({{t.poly[1], 2.0 * t.poly[2], 0.0}, t.a, t.b});
    }
    return out;
}

double eval(const TermSum& s, double l, double rho) {
    const double t = 1.0 + rho * rho;
    double acc = 0.0;
    for (const Term& term : s) {
        const double coeff = term.poly[0] + l * (term.poly[1] + l * term.poly[2]);
        acc += coeff * std::pow(rho, term.a) * std::pow(t, term.b);
    }
    return acc;
}

// U+ = (l^2 - l)/rho^2 - (4l^2 - 4l - 3)/t^2 + (4l + 2)/(rho^2 t^2)
const TermSum& u_plus_terms() {
    static const TermSum s = {
        {{0.0, -1.0, 1.0}, -2, 0},
        {{3.0, 4.0, -4.0}, 0, -2},
        {{2.0, 4.0, 0.0}, -2, -2},
    };
    return s;
}

struct Derivatives {
    TermSum u1, u2, u3, u1l, u2l;
};

const Derivatives& derivs() {
    static const Derivatives d = [] {
        Derivatives out;
        out.u1 = d_rho(u_plus_terms());
        out.u2 = d_rho(out.u1);
        out.u3 = d_rho(out.u2);
        out.u1l = d_l(out.u1);
        out.u2l = d_l(out.u2);
        return out;
    }();
    return d;
}

// Largest value of dU+/drho over the pocket window; positive iff the pocket
// has been born. Acts as the fold discriminant.
struct ScanMax {
    double value;
    double rho;
};

ScanMax scan_derivative_max(double l, double rho_lo, double rho_hi, int samples) {
    const Derivatives& d = derivs();
    ScanMax best{-1e300, rho_lo};
    for (int i = 0; i <= samples; ++i) {
        const double rho = rho_lo + (rho_hi - rho_lo) * i / samples;
        const double v = eval(d.u1, l, rho);
        if (v > best.value)
            best = {v, rho};
    }
    return best;
}

double bisect(const TermSum& s, double l, double a, double b, double fa) {
    for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + b); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = eval(s, l, m);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double partner_potential(double l, double rho) {
    if (l < 0.0 || !(rho > 0.0))
        throw std::domain_error("partner_potential: need l >= 0, rho > 0");
    return eval(u_plus_terms(), l, rho);
}

double partner_potential_drho(double l, double rho) {
    if (l < 0.0 || !(rho > 0.0))
        throw std::domain_error("partner_potential_drho: need l >= 0, rho > 0");
    return eval(derivs().u1, l, rho);
}

double partner_potential_d2rho(double l, double rho) {
    if (l < 0.0 || !(rho > 0.0))
        throw std::domain_error("partner_potential_d2rho: need l >= 0, rho > 0");
    return eval(derivs().u2, l, rho);
}

CriticalPoint find_critical_l(double tol) {
    if (!(tol > 0.0))
        throw std::domain_error("find_critical_l: tol must be > 0");
    const Derivatives& d = derivs();

    // coarse scan over l in [4, 10]: locate the birth of the pocket
    const double l_lo_window = 4.0, l_hi_window = 10.0;
    double l_lo = l_lo_window, l_hi = -1.0;
    ScanMax seed{0.0, 0.0};
    const int l_steps = 48;
    double prev_l = l_lo_window;
    if (scan_derivative_max(prev_l, 0.5, 4.0, 700).value > 0.0)
        throw not_found_error("find_critical_l: pocket already open at l=4; no fold in window");
    for (int i = 1; i <= l_steps; ++i) {
        const double li = l_lo_window + (l_hi_window - l_lo_window) * i / l_steps;
        const ScanMax cur = scan_derivative_max(li, 0.5, 4.0, 700);
        if (cur.value > 0.0) {
            l_lo = prev_l;
            l_hi = li;
            seed = cur;
            break;
        }
        prev_l = li;
    }
    if (l_hi < 0.0)
        throw not_found_error("find_critical_l: no pocket born for l in [4, 10]");

    // damped Newton on (dU/drho, d2U/drho2) = 0 in (rho, l)
    double rho = seed.rho;
    double l = 0.5 * (l_lo + l_hi);
    double g1 = eval(d.u1, l, rho);
    double g2 = eval(d.u2, l, rho);
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
        const double j11 = eval(d.u2, l, rho), j12 = eval(d.u1l, l, rho);
        const double j21 = eval(d.u3, l, rho), j22 = eval(d.u2l, l, rho);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0)
            break;
        const double drho = -(g1 * j22 - g2 * j12) / det;
        const double dl = -(j11 * g2 - j21 * g1) / det;
        double step = 1.0;
        double n_rho = rho, n_l = l, n_g1 = g1, n_g2 = g2;
        const double g_norm = std::hypot(g1, g2);
        bool improved = false;
        for (int halvings = 0; halvings < 30; ++halvings) {
            const double try_rho = rho + step * drho;
            const double try_l = l + step * dl;
            if (try_rho > 0.05 && try_l >= 0.0) {
                const double t1 = eval(d.u1, try_l, try_rho);
                const double t2 = eval(d.u2, try_l, try_rho);
                if (std::hypot(t1, t2) < g_norm) {
                    n_rho = try_rho;
                    n_l = try_l;
                    n_g1 = t1;
                    n_g2 = t2;
                    improved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!improved)
            break;
        rho = n_rho;
        l = n_l;
        g1 = n_g1;
        g2 = n_g2;
        if (std::abs(g1) < tol && std::abs(g2) < tol &&
            std::abs(step * drho) < 1e-12 + 0.01 * tol &&
            std::abs(step * dl) < 1e-12 + 0.01 * tol) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        // fallback: bisection on the fold discriminant max_rho dU/drho
        double a = l_lo, b = l_hi;
        for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
            const double m = 0.5 * (a + b);
            if (scan_derivative_max(m, 0.5, 4.0, 4000).value > 0.0)
                b = m;
            else
                a = m;
        }
        l = 0.5 * (a + b);
        const ScanMax sm = scan_derivative_max(l, 0.5, 4.0, 4000);
        // at the fold, d2U/drho2 crosses zero at the argmax of dU/drho
        const double lo = sm.rho - 0.05, hi = sm.rho + 0.05;
        rho = bisect(d.u2, l, lo, hi, eval(d.u2, l, lo));
        g1 = eval(d.u1, l, rho);
        g2 = eval(d.u2, l, rho);
        if (!(std::abs(g1) < tol && std::abs(g2) < tol))
            throw not_found_error("find_critical_l: fallback bisection residuals (" +
                                  std::to_string(g1) + ", " + std::to_string(g2) +
                                  ") exceed tol");
    }

    CriticalPoint cp;
    cp.l_cr = l;
    cp.rho_cr = rho;
    cp.grad_residuals = {std::abs(g1), std::abs(g2)};
    return cp;
}

PocketReport pocket_analysis(double l, const RadialGrid& scan) {
    if (l < 0.0)
        throw std::domain_error("pocket_analysis: l must be >= 0");
    if (scan.front() > 0.2 + 1e-12 || scan.back() < 10.0 - 1e-12)
        throw std::domain_error("pocket_analysis: scan grid must cover [0.2, 10]");
    const Derivatives& d = derivs();

    PocketReport report;
    report.l = l;
    double prev_rho = scan.front();
    double prev_v = eval(d.u1, l, prev_rho);
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double cur_rho = scan[i];
        const double cur_v = eval(d.u1, l, cur_rho);
        if (prev_v != 0.0 && cur_v != 0.0 && (prev_v > 0.0) != (cur_v > 0.0)) {
            const double root = bisect(d.u1, l, prev_rho, cur_rho, prev_v);
            const Extremum ext{root, eval(u_plus_terms(), l, root)};
            if (eval(d.u2, l, root) > 0.0) {
                if (!report.minimum)
                    report.minimum = ext;
            } else if (report.minimum && !report.maximum) {
                report.maximum = ext;
            }
        }
        prev_rho = cur_rho;
        prev_v = cur_v;
    }
    if (report.minimum && report.maximum)
        report.depth = report.maximum->value - report.minimum->value;
    return report;
}

} // namespace mf::numeric
