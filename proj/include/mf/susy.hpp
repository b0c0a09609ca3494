#pragma once

#include <functional>
#include <span>

#include "mf/grid.hpp"

namespace mf::susy {

// Bosonic (minus) / fermionic (plus) member of the partner pair H-/H+.
enum class Partner { minus, plus };

// The supersymmetric construction lives in the nodeless ground sector:
// polynomial degree p = 0, so n = l + 1.
enum class Sector { ground };
struct SectorSpec {
    int l = 0;
    Sector sector = Sector::ground;
};

// Q_l(xi) = (2l+3) xi / (xi^2 - 1). Throws singularity_error at xi = +-1.
double natanzon_Q(int l, double xi);

// R_p(xi) = -p(2q+p) / (xi^2 - 1); identically zero for p = 0.
// Throws singularity_error at xi = +-1 when p > 0.
double natanzon_Rp(int p, double q, double xi);

// Reconstruction of the ground-sector factor from the point transformation:
// |xi'(rho)|^{-1/2} exp[(1/2) * antiderivative of Q_l at xi(rho)], with the
// antiderivative (2l+3)/2 ln(1 - xi^2) taken in closed form. Proportional to
// f_l(rho) with an l-dependent constant (2^{(2l+1)/2}).
double f_from_Q(int l, double rho);

struct NatanzonResiduals {
    double point_map;  // xi''/(xi')^2 + 2 f'/(xi' f) - Q_l(xi(rho))
    double potential;  // f''/((xi')^2 f) - U-/(xi')^2   (ground sector, R_0 = 0)
};

// Both vanish identically for the closed forms; evaluated with analytic
// derivatives of f_l and of the xi map.
NatanzonResiduals natanzon_residuals(int l, double rho);

// W(rho) = l/rho - (2l+1)/(rho (1+rho^2)). Throws singularity_error at rho = 0.
double superpotential(int l, double rho);

// W(rho) = -(d/drho) ln f_l(rho) via the analytic derivative of f_l.
// Equal to superpotential() identically (same rational function).
double superpotential_from_f(int l, double rho);

// dW/drho, analytic.
double superpotential_deriv(int l, double rho);

// Partner potentials of the ground sector, E0 units:
//   minus: l(l+1)/rho^2 - (2l+1)(2l+3)/(1+rho^2)^2
//   plus:  l(l-1)/rho^2 - (2l+1)(2l-3)/(1+rho^2)^2 + 2(2l+1)/(rho^2 (1+rho^2)^2)
// l is accepted as a real parameter (the fold-point search varies it
// continuously); physical sectors use integers.
double u_eff(Partner kind, double l, double rho);

// u_eff - (W^2 -+ W'); identically ~0 for both kinds.
double riccati_residual(Partner kind, int l, double rho);

// Factorization operators A = d/drho + W and A^+ = -d/drho + W.
enum class FactorOp { A, A_dagger };

// Analytic path: caller supplies u and its derivative.
double apply_factor_op(FactorOp op, int l, const std::function<double(double)>& u,
                       const std::function<double(double)>& du, double rho);

// Sampled path: derivative from a 5-point central stencil on uniform grids,
// 3-point nonuniform stencil otherwise. rho must be a grid point with enough
// neighbours for the stencil (std::out_of_range at the boundary).
double apply_factor_op(FactorOp op, int l, const RadialGrid& grid,
                       std::span<const double> u, double rho);

} // namespace mf::susy
