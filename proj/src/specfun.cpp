#include "mf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mf/errors.hpp"

namespace mf::specfun {

namespace {

void check_index(const GegenbauerIndex& idx) {
    if (idx.degree < 0)
        throw std::domain_error("gegenbauer: degree p must be >= 0, got " +
                                std::to_string(idx.degree));
    if (!(idx.parameter > 0.0))
        throw std::domain_error("gegenbauer: parameter q must be > 0, got " +
                                std::to_string(idx.parameter));
}

} // namespace

double gegenbauer(const GegenbauerIndex& idx, double xi) {
    check_index(idx);
    const int p = idx.degree;
    const double q = idx.parameter;
    if (p == 0)
        return 1.0;
    double prev = 1.0;        // C_0
    double cur = 2.0 * q * xi; // C_1
    for (int k = 2; k <= p; ++k) {
        const double next =
            (2.0 * (k + q - 1.0) * xi * cur - (k + 2.0 * q - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

double gegenbauer_deriv(const GegenbauerIndex& idx, double xi) {
    check_index(idx);
    if (idx.degree == 0)
        return 0.0;
    return 2.0 * idx.parameter *
           gegenbauer({idx.degree - 1, idx.parameter + 1.0}, xi);
}

double gegenbauer_deriv2(const GegenbauerIndex& idx, double xi) {
    check_index(idx);
    if (idx.degree < 2)
        return 0.0;
    return 4.0 * idx.parameter * (idx.parameter + 1.0) *
           gegenbauer({idx.degree - 2, idx.parameter + 2.0}, xi);
}

ResidualParts ultraspherical_residual_parts(const GegenbauerIndex& idx, double xi) {
    check_index(idx);
    if (xi == 1.0 || xi == -1.0)
        throw singularity_error("ultraspherical_residual: coefficients singular at xi = +-1");
    const double p = idx.degree;
    const double q = idx.parameter;
    const double l = q - 1.0;
    const double denom = xi * xi - 1.0;
    const double Q = (2.0 * l + 3.0) * xi / denom;
    const double R = -p * (2.0 * q + p) / denom;

    const double t2 = gegenbauer_deriv2(idx, xi);
    const double t1 = Q * gegenbauer_deriv(idx, xi);
    const double t0 = R * gegenbauer(idx, xi);
    const double scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0)});
    return {t2 + t1 + t0, scale};
}

double ultraspherical_residual(const GegenbauerIndex& idx, double xi) {
    return ultraspherical_residual_parts(idx, xi).residual;
}

} // namespace mf::specfun
