#pragma once

namespace mf::specfun {

// Index pair of an ultraspherical (Gegenbauer) polynomial C_p^q:
// degree p >= 0 and parameter q > 0.
struct GegenbauerIndex {
    int degree;       // p
    double parameter; // q
};

// Whether xi lies outside the polynomials' natural interval [-1, 1].
// Evaluation outside is well defined (polynomial) but is extrapolation;
// the radial map never produces such xi.
constexpr bool gegenbauer_extrapolation(double xi) { return xi < -1.0 || xi > 1.0; }

// C_p^q(xi) by the stable three-term forward recurrence.
double gegenbauer(const GegenbauerIndex& idx, double xi);

// d/dxi C_p^q(xi) = 2q C_{p-1}^{q+1}(xi).
double gegenbauer_deriv(const GegenbauerIndex& idx, double xi);

// d^2/dxi^2 C_p^q(xi) = 4q(q+1) C_{p-2}^{q+2}(xi).
double gegenbauer_deriv2(const GegenbauerIndex& idx, double xi);

struct ResidualParts {
    double residual; // C'' + Q_l C' + R_p C
    double scale;    // largest of the three term magnitudes
};

// Residual of the ultraspherical equation C'' + Q_l(xi) C' + R_p(xi) C = 0
// with Q_l = (2l+3) xi / (xi^2 - 1), R_p = -p(2q+p)/(xi^2 - 1) and l = q - 1.
// Vanishes (to rounding) for every valid index. Throws singularity_error at
// xi = +-1 where the coefficients blow up.
ResidualParts ultraspherical_residual_parts(const GegenbauerIndex& idx, double xi);
double ultraspherical_residual(const GegenbauerIndex& idx, double xi);

} // namespace mf::specfun
