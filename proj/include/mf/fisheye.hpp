#pragma once

namespace mf::fisheye {

// Quantum numbers of a zero-energy fish-eye state: principal n >= 1 and
// angular l with 0 <= l <= n-1. The radial number is n_r = n - l - 1.
class QuantumNumbers {
  public:
    QuantumNumbers(int n, int l); // throws std::domain_error on invalid pair
    static QuantumNumbers from_radial(int n_r, int l);

    int n() const { return n_; }
    int l() const { return l_; }
    int n_r() const { return n_ - l_ - 1; }

  private:
    int n_;
    int l_;
};

// Lens of radius R > 0 with dimensionless coupling w > 0.
struct LensModel {
    LensModel(double radius, double coupling);
    double radius;   // R, length units
    double coupling; // w
};

// E0 = hbar^2 / (2 m R^2). All scaled quantities are reported in these units;
// this helper is the only place hbar and m appear.
struct EnergyScale {
    double value;
};
EnergyScale energy_scale(double hbar, double mass, double radius);

// n(r) = 2R^2 / (R^2 + r^2). Physical beyond r = R as well (see inside_lens).
double refractive_index(double r, const LensModel& model);
bool inside_lens(double r, const LensModel& model);

// U(r) = -w / (2 R^2 (1 + r^2/R^2)^2), the classical zero-energy potential.
double classical_potential(double r, const LensModel& model);

// U_MF(rho) = -w / (1 + rho^2)^2 in E0 units.
double mf_potential(double rho, double w);

// Quantized coupling w_n = 4n^2 - 1.
double coupling_constant(int n);

// xi(rho) = (1 - rho^2) / (1 + rho^2), mapping (0, inf) onto (-1, 1).
double xi_of_rho(double rho);

// f_l(rho) = rho^{l+1} / (1 + rho^2)^{(2l+1)/2}, the nodeless ground-sector
// radial factor.
double f_l(int l, double rho);

// Radial wavefunction R_nl(rho) = N rho^l (1+rho^2)^{-(2l+1)/2} C_{n_r}^{l+1}(xi).
// N = 1 unless normalized is set; normalized requires l >= 1
// (throws non_normalizable_error otherwise).
double radial_R(const QuantumNumbers& qn, double rho, bool normalized = false,
                double quad_tol = 1e-10);

// u_nl(rho) = rho R_nl(rho).
double radial_u(const QuantumNumbers& qn, double rho, bool normalized = false,
                double quad_tol = 1e-10);

// Normalization constant with the 3D radial measure,
// integral of N^2 R^2 rho^2 drho = 1 (equivalently integral of N^2 u^2 = 1).
// Adaptive quadrature after the compactifying substitution rho = tan(theta/2).
double normalization(const QuantumNumbers& qn, double quad_tol = 1e-10);

// Degree of degeneracy of the level with principal number n: n^2.
int degeneracy(int n);

struct ResidualParts {
    double residual;
    double scale; // largest local term magnitude
};

// Residual of [-d^2/drho^2 + l(l+1)/rho^2 - (4n^2-1)/(1+rho^2)^2] u_nl at rho,
// with u'' taken by a 4th-order central stencil. ~0 for the exact states.
ResidualParts schrodinger_residual_parts(const QuantumNumbers& qn, double rho);
double schrodinger_residual(const QuantumNumbers& qn, double rho);

} // namespace mf::fisheye
