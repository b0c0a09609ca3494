#pragma once

#include <cstddef>
#include <vector>

namespace mf {

enum class GridSpacing { uniform, logarithmic };

// Strictly increasing sample points rho > 0 (rho = r/R), shared by the
// integrators, residual checks and the CLI tables.
class RadialGrid {
  public:
    static RadialGrid uniform(double rho_min, double rho_max, std::size_t count);
    static RadialGrid logarithmic(double rho_min, double rho_max, std::size_t count);

    const std::vector<double>& points() const { return points_; }
    GridSpacing spacing() const { return spacing_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

    // Step of a uniform grid; throws std::logic_error for logarithmic grids.
    double step() const;

    // Index of the grid point closest to rho; throws std::invalid_argument
    // if rho is not a grid point (relative tolerance 1e-9).
    std::size_t index_of(double rho) const;

  private:
    RadialGrid(std::vector<double> pts, GridSpacing sp);
    std::vector<double> points_;
    GridSpacing spacing_;
};

} // namespace mf
