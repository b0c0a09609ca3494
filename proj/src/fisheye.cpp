#include "mf/fisheye.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mf/errors.hpp"
#include "mf/numeric.hpp"
#include "mf/specfun.hpp"

namespace mf::fisheye {

QuantumNumbers::QuantumNumbers(int n, int l) : n_(n), l_(l) {
    if (n < 1)
        throw std::domain_error("QuantumNumbers: n must be >= 1, got " + std::to_string(n));
    if (l < 0 || l > n - 1)
        throw std::domain_error("QuantumNumbers: need 0 <= l <= n-1, got l=" +
                                std::to_string(l) + " for n=" + std::to_string(n));
}

QuantumNumbers QuantumNumbers::from_radial(int n_r, int l) {
    if (n_r < 0)
        throw std::domain_error("QuantumNumbers: n_r must be >= 0");
    return QuantumNumbers(n_r + l + 1, l);
}

LensModel::LensModel(double radius_, double coupling_) : radius(radius_), coupling(coupling_) {
    if (!(radius > 0.0))
        throw std::domain_error("LensModel: radius must be > 0");
    if (!(coupling > 0.0))
        throw std::domain_error("LensModel: coupling must be > 0");
}

EnergyScale energy_scale(double hbar, double mass, double radius) {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(radius > 0.0))
        throw std::domain_error("energy_scale: hbar, mass, radius must be > 0");
    return {hbar * hbar / (2.0 * mass * radius * radius)};
}

double refractive_index(double r, const LensModel& model) {
    if (r < 0.0)
        throw std::domain_error("refractive_index: r must be >= 0");
    const double R2 = model.radius * model.radius;
    return 2.0 * R2 / (R2 + r * r);
}

bool inside_lens(double r, const LensModel& model) {
    return r >= 0.0 && r <= model.radius;
}

double classical_potential(double r, const LensModel& model) {
    if (r < 0.0)
        throw std::domain_error("classical_potential: r must be >= 0");
    const double R2 = model.radius * model.radius;
    const double s = 1.0 + r * r / R2;
    return -model.coupling / (2.0 * R2 * s * s);
}

double mf_potential(double rho, double w) {
    if (rho < 0.0)
        throw std::domain_error("mf_potential: rho must be >= 0");
    const double t = 1.0 + rho * rho;
    return -w / (t * t);
}

double coupling_constant(int n) {
    if (n < 1)
        throw std::domain_error("coupling_constant: n must be >= 1");
    return 4.0 * static_cast<double>(n) * n - 1.0;
}

double xi_of_rho(double rho) {
    if (rho < 0.0)
        throw std::domain_error("xi_of_rho: rho must be >= 0");
    const double r2 = rho * rho;
    return (1.0 - r2) / (1.0 + r2);
}

double f_l(int l, double rho) {
    if (l < 0)
        throw std::domain_error("f_l: l must be >= 0");
    if (!(rho > 0.0))
        throw std::domain_error("f_l: rho must be > 0");
    // exp form avoids overflow of rho^{l+1} at large rho
    return std::exp((l + 1.0) * std::log(rho) -
                    0.5 * (2.0 * l + 1.0) * std::log1p(rho * rho));
}

double normalization(const QuantumNumbers& qn, double quad_tol) {
    if (qn.l() == 0)
        throw non_normalizable_error(
            "normalization: l=0 zero-energy states have divergent norm");
    const int l = qn.l();
    const int p = qn.n_r();
    const double q = l + 1.0;
    // rho = tan(theta/2) turns the norm integral of u^2 into a smooth
    // integrand on [0, pi]:
    //   (1/2) sin^{2l+2}(theta/2) cos^{2l-2}(theta/2) C_p^q(cos theta)^2
    auto integrand = [&](double theta) {
        const double s = std::sin(0.5 * theta);
        const double c = std::cos(0.5 * theta);
        const double poly = specfun::gegenbauer({p, q}, std::cos(theta));
        return 0.5 * std::pow(s, 2.0 * l + 2.0) * std::pow(c, 2.0 * l - 2.0) * poly * poly;
    };
    const double norm2 = numeric::quadrature(integrand, 0.0, 3.14159265358979323846, quad_tol);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw accuracy_error("normalization: quadrature returned a non-usable norm");
    return 1.0 / std::sqrt(norm2);
}

double radial_R(const QuantumNumbers& qn, double rho, bool normalized, double quad_tol) {
    if (!(rho > 0.0))
        throw std::domain_error("radial_R: rho must be > 0");
    const int l = qn.l();
    const double xi = xi_of_rho(rho);
    const double poly = specfun::gegenbauer({qn.n_r(), l + 1.0}, xi);
    const double radial = std::exp(l * std::log(rho) -
                                   0.5 * (2.0 * l + 1.0) * std::log1p(rho * rho));
    const double N = normalized ? normalization(qn, quad_tol) : 1.0;
    return N * radial * poly;
}

double radial_u(const QuantumNumbers& qn, double rho, bool normalized, double quad_tol) {
    return rho * radial_R(qn, rho, normalized, quad_tol);
}

int degeneracy(int n) {
    if (n < 1)
        throw std::domain_error("degeneracy: n must be >= 1");
    return n * n;
}

ResidualParts schrodinger_residual_parts(const QuantumNumbers& qn, double rho) {
    if (!(rho > 0.0))
        throw std::domain_error("schrodinger_residual: rho must be > 0");
    // Step must shrink with rho near the origin so the stencil resolves the
    // rho^{l+1} rise; see also the accuracy guard below.
    const double h = std::min(0.002 * std::max(1.0, rho), rho / 28.0);
    if (!(h * h > 0.0))
        throw accuracy_error("schrodinger_residual: step underflow near rho -> 0");

    auto u = [&](double r) { return radial_u(qn, r); };
    const double d2 =
        (-u(rho - 2 * h) + 16.0 * u(rho - h) - 30.0 * u(rho) + 16.0 * u(rho + h) -
         u(rho + 2 * h)) /
        (12.0 * h * h);

    const int l = qn.l();
    const double w = coupling_constant(qn.n());
    const double t = 1.0 + rho * rho;
    const double centrifugal = l * (l + 1.0) / (rho * rho) * u(rho);
    const double well = -w / (t * t) * u(rho);

    const double residual = -d2 + centrifugal + well;
    const double scale = std::max({std::abs(d2), std::abs(centrifugal), std::abs(well)});
    return {residual, scale};
}

double schrodinger_residual(const QuantumNumbers& qn, double rho) {
    return schrodinger_residual_parts(qn, rho).residual;
}

} // namespace mf::fisheye
