#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mf/grid.hpp"

namespace mf::numeric {

enum class Direction { outward, inward };
enum class ParameterKind { coupling, wavenumber };

struct BoundaryReport {
    double origin_exponent = 0.0;        // log-log fit of |u| over the first decade
    double tail_exponent_or_phase = 0.0; // power-law fit (bound) or sinusoid phase (continuum)
};

// Sampled solution u(rho) of a radial problem.
struct RadialSolution {
    RadialGrid grid;
    std::vector<double> values;
    int l = 0;
    ParameterKind kind = ParameterKind::coupling;
    double parameter = 0.0; // w or k
    BoundaryReport boundary{};
    double log_scale = 0.0; // accumulated ln of overflow rescales (0 if none)
};

// Integrates -u'' + [l(l+1)/rho^2 - w/(1+rho^2)^2] u = 0 on a uniform grid
// with a 4th-order (Numerov) stepper. Outward runs seed u ~ rho^{l+1} at the
// first two points (series-corrected); inward runs seed the decaying
// power law u ~ rho^{-l} at the last two. Overflow triggers rescale-and-continue
// with the factor recorded in log_scale.
RadialSolution integrate_radial(int l, double w, const RadialGrid& grid, Direction direction);

// Coupling eigenvalue for the sector (l, n_r): the w at which outward and
// inward solutions match logarithmic derivatives at rho = 1 with exactly n_r
// interior nodes. Bracket is auto-initialized to [1, 4(n_r+l+2)^2].
// Expected value: 4 (n_r+l+1)^2 - 1.
double solve_coupling(int l, int n_r, double tol);

// Continuum (fermionic) solution of -u'' + U+ u = k^2 u, integrated outward
// from the regular origin behavior u ~ rho^{l+2}, normalized to unit tail
// amplitude. boundary.tail_exponent_or_phase holds the phase of a least-squares
// sinusoid fit A sin(k rho + phase) over the last decade of the grid.
// Requires grid.back() >= 30/k (accuracy_error otherwise).
RadialSolution solve_continuum(int l, double k, const RadialGrid& grid);

// Control mode: same integrator with the potential replaced by zero and the
// regular free behavior u ~ rho^{l+1} at the origin.
RadialSolution solve_continuum_free(int l, double k, const RadialGrid& grid);

// Per-point residual |-u'' + (U - k^2) u| / max(1, k^2) of a continuum
// solution (5-point stencil; first/last two points zero-padded). The first
// overload uses the fermionic partner potential of sol.l; the second takes an
// explicit potential (free control mode).
std::vector<double> continuum_residuals(const RadialSolution& sol);
std::vector<double> continuum_residuals(const RadialSolution& sol,
                                        const std::function<double(double)>& potential);

// Fold point of the fermionic partner potential: the (l, rho) where the first
// and second rho-derivatives of U+ vanish simultaneously (birth of the pocket).
struct CriticalPoint {
    double l_cr = 0.0;
    double rho_cr = 0.0;
    std::pair<double, double> grad_residuals{0.0, 0.0}; // |dU/drho|, |d2U/drho2|
};

// Damped 2D Newton with analytic derivatives, seeded from a coarse scan over
// l in [4, 10], rho in [0.5, 4]; falls back to bisection on the pocket
// discriminant (sign of max_rho dU+/drho). Throws not_found_error if the scan
// window holds no fold.
CriticalPoint find_critical_l(double tol);

struct Extremum {
    double rho;
    double value;
};

// Stationary structure of U+(., l) located by sign changes of the analytic
// derivative refined by bisection. Absence of extrema is a valid report.
struct PocketReport {
    double l = 0.0;
    std::optional<Extremum> minimum;
    std::optional<Extremum> maximum;
    std::optional<double> depth; // U_max - U_min when both present
    bool has_pocket() const { return minimum && maximum; }
};

// scan must cover [0.2, 10].
PocketReport pocket_analysis(double l, const RadialGrid& scan);

// U+ and its analytic rho-derivatives with l continuous (shared by the fold
// search, the pocket scan and tests).
double partner_potential(double l, double rho);
double partner_potential_drho(double l, double rho);
double partner_potential_d2rho(double l, double rho);

// Adaptive Simpson quadrature to relative tolerance tol.
// Throws accuracy_error when the refinement depth is exhausted.
double quadrature(const std::function<double(double)>& f, double a, double b, double tol);

// Integral over [0, inf) via rho = tan(phi); the integrand must decay.
double quadrature_to_infinity(const std::function<double(double)>& f, double tol);

// Sign changes of u at rho > rho_floor (origin region excluded).
int count_nodes(std::span<const double> u, std::span<const double> rho, double rho_floor);

} // namespace mf::numeric
