#pragma once

#include <string>
#include <vector>

namespace mf::svg {

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Marker {
    double x;
    double y;
    std::string label;
};

// Static line chart: labelled curves on fixed axes, optional point markers.
// Curve samples outside the y-range are culled (the path splits).
struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    std::vector<Curve> curves;
    std::vector<Marker> markers;
};

// Renders the chart as a standalone SVG document. Throws
// std::invalid_argument if a curve's x values are not strictly increasing
// or the axis ranges are empty.
std::string render(const PlotSpec& spec, int width = 760, int height = 520);

// render() + write; throws std::runtime_error on I/O failure.
void write_file(const PlotSpec& spec, const std::string& path);

} // namespace mf::svg
