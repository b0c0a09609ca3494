#include "mf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mf {

RadialGrid::RadialGrid(std::vector<double> pts, GridSpacing sp)
    : points_(std::move(pts)), spacing_(sp) {}

RadialGrid RadialGrid::uniform(double rho_min, double rho_max, std::size_t count) {
    if (!(rho_min > 0.0) || !(rho_max > rho_min))
        throw std::domain_error("RadialGrid: need 0 < rho_min < rho_max");
    if (count < 2)
        throw std::domain_error("RadialGrid: need at least 2 points");
    std::vector<double> pts(count);
    const double h = (rho_max - rho_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = rho_min + h * static_cast<double>(i);
    pts.back() = rho_max;
    return RadialGrid(std::move(pts), GridSpacing::uniform);
}

RadialGrid RadialGrid::logarithmic(double rho_min, double rho_max, std::size_t count) {
    if (!(rho_min > 0.0) || !(rho_max > rho_min))
        throw std::domain_error("RadialGrid: need 0 < rho_min < rho_max");
    if (count < 2)
        throw std::domain_error("RadialGrid: need at least 2 points");
    std::vector<double> pts(count);
    const double lmin = std::log(rho_min);
    const double dl = (std::log(rho_max) - lmin) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = std::exp(lmin + dl * static_cast<double>(i));
    pts.front() = rho_min;
    pts.back() = rho_max;
    return RadialGrid(std::move(pts), GridSpacing::logarithmic);
}

double RadialGrid::step() const {
    if (spacing_ != GridSpacing::uniform)
        throw std::logic_error("RadialGrid::step: grid is not uniform");
    return (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
}

std::size_t RadialGrid::index_of(double rho) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), rho);
    std::size_t i = static_cast<std::size_t>(it - points_.begin());
    if (i > 0 && (i == points_.size() || rho - points_[i - 1] < points_[i] - rho))
        --i;
    if (std::abs(points_[i] - rho) > 1e-9 * (1.0 + std::abs(rho)))
        throw std::invalid_argument("RadialGrid::index_of: rho=" + std::to_string(rho) +
                                    " is not a grid point");
    return i;
}

} // namespace mf
