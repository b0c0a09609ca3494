#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mf/errors.hpp"
#include "mf/numeric.hpp"

namespace mf::numeric {

namespace {

struct WaveResult {
    std::vector<double> u;
    double phase;
    double amplitude;
};

// Outward Numerov run of -u'' + U u = k^2 u with u ~ rho^{lead} at the origin.
// Points the stencil cannot resolve (strong centrifugal wall) are filled with
// the leading power law before stepping begins.
WaveResult integrate_wave(const std::function<double(double)>& potential, double lead,
                          double k, const RadialGrid& grid) {
    if (grid.spacing() != GridSpacing::uniform)
        throw std::domain_error("solve_continuum: needs a uniform grid");
    const std::size_t n = grid.size();
    if (n < 32)
        throw std::domain_error("solve_continuum: grid too coarse");
    const double h = grid.step();
    const double h2 = h * h;
    const std::vector<double>& rho = grid.points();

    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = potential(rho[i]) - k * k;

    std::vector<double> u(n, 0.0);
    std::size_t i0 = 1;
    while (i0 + 2 < n && h2 * std::abs(g[i0]) > 0.04)
        ++i0;
    for (std::size_t i = 0; i <= i0; ++i)
        u[i] = std::pow(rho[i], lead);
    for (std::size_t i = i0; i + 1 < n; ++i)
        u[i + 1] = ((2.0 + (5.0 / 6.0) * h2 * g[i]) * u[i] -
                    (1.0 - h2 * g[i - 1] / 12.0) * u[i - 1]) /
                   (1.0 - h2 * g[i + 1] / 12.0);

    // least-squares sinusoid over the last decade: u ~ a sin(k rho) + b cos(k rho)
    double Sss = 0, Scc = 0, Ssc = 0, Sus = 0, Suc = 0;
    const double rho_fit = grid.back() / 10.0;
    std::size_t n_fit = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rho[i] < rho_fit)
            continue;
        const double s = std::sin(k * rho[i]);
        const double c = std::cos(k * rho[i]);
        Sss += s * s;
        Scc += c * c;
        Ssc += s * c;
        Sus += u[i] * s;
        Suc += u[i] * c;
        ++n_fit;
    }
    if (n_fit < 16)
        throw accuracy_error("solve_continuum: grid too short for the tail phase fit");
    const double det = Sss * Scc - Ssc * Ssc;
    if (!(std::abs(det) > 0.0))
        throw accuracy_error("solve_continuum: degenerate tail phase fit");
    const double a = (Scc * Sus - Ssc * Suc) / det;
    const double b = (Sss * Suc - Ssc * Sus) / det;
    const double amplitude = std::hypot(a, b);
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw accuracy_error("solve_continuum: tail amplitude fit failed");
    return {std::move(u), std::atan2(b, a), amplitude};
}

double origin_slope(const RadialGrid& grid, const std::vector<double>& u) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < grid.size() && grid[i] <= 10.0 * grid.front(); ++i) {
        const double au = std::abs(u[i]);
        if (!(au > 0.0))
            continue;
        const double x = std::log(grid[i]);
        const double y = std::log(au);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3)
        return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> residual_column(const RadialGrid& grid, const std::vector<double>& u,
                                    const std::function<double(double)>& potential,
                                    double k) {
    const std::size_t n = grid.size();
    const double h = grid.step();
    std::vector<double> res(n, 0.0);
    const double scale = std::max(1.0, k * k);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double d2 = (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] -
                           u[i + 2]) /
                          (12.0 * h * h);
        res[i] = std::abs(-d2 + (potential(grid[i]) - k * k) * u[i]) / scale;
    }
    return res;
}

RadialSolution finish_wave(int l, double k, const RadialGrid& grid,
                           const std::function<double(double)>& potential, double lead) {
    if (!(k > 0.0))
        throw std::domain_error("solve_continuum: k must be > 0");
    if (grid.back() < 30.0 / k)
        throw accuracy_error("solve_continuum: grid must extend to rho_max >= 30/k for the "
                             "phase fit (rho_max=" +
                             std::to_string(grid.back()) + ", k=" + std::to_string(k) + ")");
    WaveResult wr = integrate_wave(potential, lead, k, grid);
    for (double& v : wr.u)
        v /= wr.amplitude; // unit tail amplitude

    RadialSolution sol{grid, std::move(wr.u), l, ParameterKind::wavenumber, k, {}, 0.0};
    sol.boundary.origin_exponent = origin_slope(grid, sol.values);
    sol.boundary.tail_exponent_or_phase = wr.phase;

    const std::vector<double> res = residual_column(grid, sol.values, potential, k);
    double worst = 0.0;
    for (double r : res)
        worst = std::max(worst, r);
    if (!(worst <= 1e-6))
        throw accuracy_error("solve_continuum: interior equation residual " +
                             std::to_string(worst) + " exceeds 1e-6");
    return sol;
}

} // namespace

RadialSolution solve_continuum(int l, double k, const RadialGrid& grid) {
    if (l < 0)
        throw std::domain_error("solve_continuum: l must be >= 0");
    auto U = [l](double rho) { return partner_potential(static_cast<double>(l), rho); };
    return finish_wave(l, k, grid, U, l + 2.0);
}

RadialSolution solve_continuum_free(int l, double k, const RadialGrid& grid) {
    if (l < 0)
        throw std::domain_error("solve_continuum_free: l must be >= 0");
    auto zero = [](double) { return 0.0; };
    return finish_wave(l, k, grid, zero, 1.0);
}

std::vector<double> continuum_residuals(const RadialSolution& sol) {
    if (sol.kind != ParameterKind::wavenumber)
        throw std::invalid_argument("continuum_residuals: not a continuum solution");
    const int l = sol.l;
    auto U = [l](double rho) { return partner_potential(static_cast<double>(l), rho); };
    return residual_column(sol.grid, sol.values, U, sol.parameter);
}

std::vector<double> continuum_residuals(const RadialSolution& sol,
                                        const std::function<double(double)>& potential) {
    if (sol.kind != ParameterKind::wavenumber)
        throw std::invalid_argument("continuum_residuals: not a continuum solution");
    return residual_column(sol.grid, sol.values, potential, sol.parameter);
}

} // namespace mf::numeric
