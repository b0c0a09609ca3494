#include "mf/susy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mf/errors.hpp"

namespace mf::susy {

namespace {

void require_positive_rho(double rho, const char* who) {
    if (!(rho > 0.0))
        throw singularity_error(std::string(who) + ": rho must be > 0");
}

// d/drho ln f_l = (l+1)/rho - (2l+1) rho / (1+rho^2)
double log_f_deriv(int l, double rho) {
    return (l + 1.0) / rho - (2.0 * l + 1.0) * rho / (1.0 + rho * rho);
}

// d^2/drho^2 ln f_l
double log_f_deriv2(int l, double rho) {
    const double t = 1.0 + rho * rho;
    return -(l + 1.0) / (rho * rho) - (2.0 * l + 1.0) * (1.0 - rho * rho) / (t * t);
}

} // namespace

double natanzon_Q(int l, double xi) {
    if (l < 0)
        throw std::domain_error("natanzon_Q: l must be >= 0");
    if (xi == 1.0 || xi == -1.0)
        throw singularity_error("natanzon_Q: singular at xi = +-1");
    return (2.0 * l + 3.0) * xi / (xi * xi - 1.0);
}

double natanzon_Rp(int p, double q, double xi) {
    if (p < 0)
        throw std::domain_error("natanzon_Rp: p must be >= 0");
    if (!(q > 0.0))
        throw std::domain_error("natanzon_Rp: q must be > 0");
    if (p == 0)
        return 0.0; // identically zero in the ground sector
    if (xi == 1.0 || xi == -1.0)
        throw singularity_error("natanzon_Rp: singular at xi = +-1");
    return -p * (2.0 * q + p) / (xi * xi - 1.0);
}

double f_from_Q(int l, double rho) {
    if (l < 0)
        throw std::domain_error("f_from_Q: l must be >= 0");
    require_positive_rho(rho, "f_from_Q");
    const double t = 1.0 + rho * rho;
    const double xi = (1.0 - rho * rho) / t;
    // |xi'| = 4 rho / t^2; antiderivative of Q_l is (2l+3)/2 ln(1-xi^2).
    const double log_abs_xi_prime = std::log(4.0 * rho) - 2.0 * std::log(t);
    const double log_one_minus_xi2 = std::log1p(-xi * xi);
    return std::exp(-0.5 * log_abs_xi_prime + 0.25 * (2.0 * l + 3.0) * log_one_minus_xi2);
}

NatanzonResiduals natanzon_residuals(int l, double rho_in) {
    if (l < 0)
        throw std::domain_error("natanzon_residuals: l must be >= 0");
    require_positive_rho(rho_in, "natanzon_residuals");
    // 1/(xi')^2 amplifies the cancellation between the two routes by up to
    // ~rho^6/16 at the grid edges; extended precision keeps the residual
    // meaningful there. Both routes stay independently evaluated.
    const long double rho = rho_in;
    const long double t = 1.0L + rho * rho;
    const long double xi = (1.0L - rho * rho) / t;
    const long double xi_p = -4.0L * rho / (t * t);
    const long double xi_pp = -4.0L * (1.0L - 3.0L * rho * rho) / (t * t * t);

    const long double lf1 = (l + 1.0L) / rho - (2.0L * l + 1.0L) * rho / t;
    const long double lf1_d =
        -(l + 1.0L) / (rho * rho) - (2.0L * l + 1.0L) * (1.0L - rho * rho) / (t * t);
    const long double lf2 = lf1_d + lf1 * lf1; // f''/f

    const long double Q = (2.0L * l + 3.0L) * xi / (xi * xi - 1.0L);
    const long double point_map = xi_pp / (xi_p * xi_p) + 2.0L * lf1 / xi_p - Q;

    const long double u_minus = l * (l + 1.0L) / (rho * rho) -
                                (2.0L * l + 1.0L) * (2.0L * l + 3.0L) / (t * t);
    const long double potential = (lf2 - u_minus) / (xi_p * xi_p); // R_0 term is zero

    return {static_cast<double>(point_map), static_cast<double>(potential)};
}

double superpotential(int l, double rho) {
    if (l < 0)
        throw std::domain_error("superpotential: l must be >= 0");
    require_positive_rho(rho, "superpotential");
    return l / rho - (2.0 * l + 1.0) / (rho * (1.0 + rho * rho));
}

double superpotential_from_f(int l, double rho) {
    if (l < 0)
        throw std::domain_error("superpotential_from_f: l must be >= 0");
    require_positive_rho(rho, "superpotential_from_f");
    return -log_f_deriv(l, rho);
}

double superpotential_deriv(int l, double rho) {
    if (l < 0)
        throw std::domain_error("superpotential_deriv: l must be >= 0");
    require_positive_rho(rho, "superpotential_deriv");
    return -log_f_deriv2(l, rho);
}

double u_eff(Partner kind, double l, double rho) {
    if (l < 0.0)
        throw std::domain_error("u_eff: l must be >= 0");
    require_positive_rho(rho, "u_eff");
    const double t = 1.0 + rho * rho;
    if (kind == Partner::minus)
        return l * (l + 1.0) / (rho * rho) - (2.0 * l + 1.0) * (2.0 * l + 3.0) / (t * t);
    return l * (l - 1.0) / (rho * rho) - (2.0 * l + 1.0) * (2.0 * l - 3.0) / (t * t) +
           2.0 * (2.0 * l + 1.0) / (rho * rho * t * t);
}

double riccati_residual(Partner kind, int l, double rho) {
    const double W = superpotential(l, rho);
    const double Wp = superpotential_deriv(l, rho);
    const double sign = (kind == Partner::minus) ? -1.0 : 1.0;
    return u_eff(kind, l, rho) - (W * W + sign * Wp);
}

double apply_factor_op(FactorOp op, int l, const std::function<double(double)>& u,
                       const std::function<double(double)>& du, double rho) {
    const double W = superpotential(l, rho);
    const double d = du(rho);
    return (op == FactorOp::A) ? d + W * u(rho) : -d + W * u(rho);
}

double apply_factor_op(FactorOp op, int l, const RadialGrid& grid,
                       std::span<const double> u, double rho) {
    if (u.size() != grid.size())
        throw std::invalid_argument("apply_factor_op: sample count does not match grid");
    const std::size_t i = grid.index_of(rho);
    double d = 0.0;
    if (grid.spacing() == GridSpacing::uniform) {
        if (i < 2 || i + 2 >= grid.size())
            throw std::out_of_range("apply_factor_op: 5-point stencil hits the grid boundary");
        const double h = grid.step();
        d = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h);
    } else {
        if (i < 1 || i + 1 >= grid.size())
            throw std::out_of_range("apply_factor_op: 3-point stencil hits the grid boundary");
        const double hm = grid[i] - grid[i - 1];
        const double hp = grid[i + 1] - grid[i];
        d = -hp / (hm * (hm + hp)) * u[i - 1] + (hp - hm) / (hm * hp) * u[i] +
            hm / (hp * (hm + hp)) * u[i + 1];
    }
    const double W = superpotential(l, rho);
    return (op == FactorOp::A) ? d + W * u[i] : -d + W * u[i];
}

} // namespace mf::susy
