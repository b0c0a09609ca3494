#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mf/errors.hpp"
#include "mf/numeric.hpp"

namespace mf::numeric {

namespace {

constexpr double rescale_threshold = 1e250;

// Series correction for the boundary behavior of the zero-energy equation:
// outward  u = x^{l+1} (1 + a x^2 + b x^4 + c x^6),  x = rho,
// inward   u = x^{l}   (1 + a x^2 + b x^4 + c x^6),  x = 1/rho,
// with the same coefficients in both limits.
struct SeriesCoeffs {
    double a, b, c;
};

SeriesCoeffs boundary_series(double l, double w) {
    const double a = -w / (2.0 * (2.0 * l + 3.0));
    const double b = w * (2.0 - a) / (4.0 * (2.0 * l + 5.0));
    const double c = -w * (b - 2.0 * a + 3.0) / (6.0 * (2.0 * l + 7.0));
    return {a, b, c};
}

double series_u(double x, double lead_exponent, const SeriesCoeffs& s) {
    const double x2 = x * x;
    return std::pow(x, lead_exponent) * (1.0 + x2 * (s.a + x2 * (s.b + x2 * s.c)));
}

// Least-squares slope of ln|u| against ln rho over [i0, i1); NaN when fewer
// than 3 usable points.
double log_log_slope(const std::vector<double>& rho, const std::vector<double>& u,
                     std::size_t i0, std::size_t i1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = i0; i < i1; ++i) {
        const double au = std::abs(u[i]);
        if (!(au > 0.0) || !std::isfinite(au))
            continue;
        const double x = std::log(rho[i]);
        const double y = std::log(au);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3)
        return std::numeric_limits<double>::quiet_NaN();
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / denom;
}

void rescale_if_needed(std::vector<double>& u, std::size_t upto, double& log_scale) {
    const double m = std::abs(u[upto]);
    if (m > rescale_threshold) {
        for (std::size_t j = 0; j <= upto; ++j)
            u[j] /= m;
        log_scale += std::log(m);
    }
}

} // namespace

RadialSolution integrate_radial(int l, double w, const RadialGrid& grid,
                                Direction direction) {
    if (l < 0)
        throw std::domain_error("integrate_radial: l must be >= 0");
    if (grid.spacing() != GridSpacing::uniform)
        throw std::domain_error("integrate_radial: fixed-step integrator needs a uniform grid");
    const std::size_t n = grid.size();
    if (n < 16)
        throw std::domain_error("integrate_radial: grid too coarse");
    if (direction == Direction::outward && grid.front() > 0.01)
        throw std::domain_error(
            "integrate_radial: outward seeding needs rho_min <= 0.01, got rho_min=" +
            std::to_string(grid.front()));

    const double h = grid.step();
    const std::vector<double>& rho = grid.points();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 1.0 + rho[i] * rho[i];
        g[i] = l * (l + 1.0) / (rho[i] * rho[i]) - w / (t * t);
    }

    const SeriesCoeffs sc = boundary_series(l, w);
    std::vector<double> u(n, 0.0);
    double log_scale = 0.0;
    const double h2 = h * h;

    if (direction == Direction::outward) {
        // Analytic fill where the stencil cannot resolve the centrifugal rise,
        // then Numerov onward.
        const double rho_fill = std::max(rho[1], 6.0 * h * (l + 1.0));
        std::size_t i0 = 1;
        while (i0 + 2 < n && rho[i0] < rho_fill)
            ++i0;
        for (std::size_t i = 0; i <= i0; ++i)
            u[i] = series_u(rho[i], l + 1.0, sc);
        for (std::size_t i = i0; i + 1 < n; ++i) {
            u[i + 1] = ((2.0 + (5.0 / 6.0) * h2 * g[i]) * u[i] -
                        (1.0 - h2 * g[i - 1] / 12.0) * u[i - 1]) /
                       (1.0 - h2 * g[i + 1] / 12.0);
            rescale_if_needed(u, i + 1, log_scale);
        }
    } else {
        u[n - 1] = series_u(1.0 / rho[n - 1], static_cast<double>(l), sc);
        u[n - 2] = series_u(1.0 / rho[n - 2], static_cast<double>(l), sc);
        for (std::size_t i = n - 2; i > 0; --i) {
            u[i - 1] = ((2.0 + (5.0 / 6.0) * h2 * g[i]) * u[i] -
                        (1.0 - h2 * g[i + 1] / 12.0) * u[i + 1]) /
                       (1.0 - h2 * g[i - 1] / 12.0);
            const double mag = std::abs(u[i - 1]);
            if (mag > rescale_threshold) {
                for (std::size_t j = i - 1; j < n; ++j)
                    u[j] /= mag;
                log_scale += std::log(mag);
            }
        }
    }

    RadialSolution sol{grid, std::move(u), l, ParameterKind::coupling, w, {}, log_scale};

    // boundary diagnostics: power-law fits over the first and last decades
    std::size_t lo_end = 1;
    while (lo_end < n && rho[lo_end] <= 10.0 * rho.front())
        ++lo_end;
    std::size_t hi_begin = n - 1;
    while (hi_begin > 0 && rho[hi_begin] >= rho.back() / 10.0)
        --hi_begin;
    sol.boundary.origin_exponent = log_log_slope(rho, sol.values, 0, lo_end);
    sol.boundary.tail_exponent_or_phase = log_log_slope(rho, sol.values, hi_begin + 1, n);
    return sol;
}

int count_nodes(std::span<const double> u, std::span<const double> rho, double rho_floor) {
    if (u.size() != rho.size())
        throw std::invalid_argument("count_nodes: size mismatch");
    int nodes = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (rho[i] <= rho_floor || u[i] == 0.0)
            continue;
        if (prev != 0.0 && std::signbit(u[i]) != std::signbit(prev))
            ++nodes;
        prev = u[i];
    }
    return nodes;
}

namespace {

// Shooting internals: both solutions on the same grid, matched at rho = 1.

struct Shot {
    double mismatch; // scaled Wronskian of (outward, inward) at the match index
    int nodes;       // interior nodes of the outward solution
};

double deriv5(const std::vector<double>& u, std::size_t i, double h) {
    return (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h);
}

double window_scale(const std::vector<double>& u, std::size_t m) {
    double s = 0.0;
    for (std::size_t i = m - 2; i <= m + 2; ++i)
        s = std::max(s, std::abs(u[i]));
    return s > 0.0 ? s : 1.0;
}

Shot shoot(int l, double w, const RadialGrid& grid, std::size_t m) {
    RadialSolution out = integrate_radial(l, w, grid, Direction::outward);
    RadialSolution in = integrate_radial(l, w, grid, Direction::inward);
    const double so = window_scale(out.values, m);
    const double si = window_scale(in.values, m);
    for (double& v : out.values)
        v /= so;
    for (double& v : in.values)
        v /= si;
    const double h = grid.step();
    const double duo = deriv5(out.values, m, h);
    const double dui = deriv5(in.values, m, h);
    const double wron = duo * in.values[m] - dui * out.values[m];
    const int nodes = count_nodes(out.values, grid.points(), 2.0 * grid.front());
    return {wron, nodes};
}

} // namespace

namespace {

// Bisection on the matching mismatch inside a sign-change bracket.
double refine_root(int l, const RadialGrid& grid, std::size_t m, double wlo, double whi,
                   double flo, double tol) {
    while (whi - wlo > tol) {
        const double wm = 0.5 * (wlo + whi);
        const double fm = shoot(l, wm, grid, m).mismatch;
        if (fm == 0.0)
            return wm;
        if ((fm > 0.0) == (flo > 0.0)) {
            wlo = wm;
            flo = fm;
        } else {
            whi = wm;
        }
    }
    return 0.5 * (wlo + whi);
}

} // namespace

double solve_coupling(int l, int n_r, double tol) {
    if (l < 0 || n_r < 0)
        throw std::domain_error("solve_coupling: l and n_r must be >= 0");
    if (!(tol > 0.0))
        throw std::domain_error("solve_coupling: tol must be > 0");

    // Matching at the xi = 0 symmetry point makes the outward and inward runs
    // mirror images under rho -> 1/rho, so the O(h^4) integrator bias cancels
    // in the mismatch: the root sits within ~1e-10 of the true eigenvalue at
    // this step already. Refining h only adds roundoff accumulation.
    const RadialGrid grid = RadialGrid::uniform(0.005, 31.0, 12399);
    const std::size_t m = grid.index_of(1.0);

    // Eigenvalues are the sign changes of the matching mismatch; at fixed l
    // the (n_r+1)-th one (in increasing w) is the n_r-node branch. The node
    // count of the outward run is used only as a cross-check: the count flip
    // lags the eigenvalue by the tail-contamination growth, so it cannot
    // bracket the root by itself.
    const double w_end = 4.0 * (n_r + l + 2.0) * (n_r + l + 2.0);
    for (double step : {1.0, 0.25}) {
        int crossings = 0;
        double w_prev = 1.0;
        double f_prev = shoot(l, w_prev, grid, m).mismatch;
        for (double w = w_prev + step; w <= w_end + 0.5 * step; w += step) {
            const double f = shoot(l, w, grid, m).mismatch;
            if (f == 0.0 || (f > 0.0) != (f_prev > 0.0)) {
                ++crossings;
                if (crossings == n_r + 1) {
                    const double w_star = refine_root(l, grid, m, w_prev, w, f_prev, tol);
                    // branch check: just below the root every lower node has
                    // materialized, so the count equals n_r
                    const int nodes =
                        shoot(l, std::max(w_star - 0.5, 1.0), grid, m).nodes;
                    if (nodes != n_r)
                        break; // rescan at the finer step
                    return w_star;
                }
            }
            w_prev = w;
            f_prev = f;
        }
    }
    throw not_found_error("solve_coupling: no n_r=" + std::to_string(n_r) +
                          " branch located for l=" + std::to_string(l) + " in w bracket [1, " +
                          std::to_string(w_end) + "]");
}

} // namespace mf::numeric
