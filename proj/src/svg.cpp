#include "mf/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mf/errors.hpp"

namespace mf::svg {

namespace {

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// round tick spacing to 1/2/5 * 10^k
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.5)
        nice = 1.0;
    else if (frac <= 3.5)
        nice = 2.0;
    else if (frac <= 7.5)
        nice = 5.0;
    return nice * mag;
}

} // namespace

std::string render(const PlotSpec& spec, int width, int height) {
    if (!(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min))
        throw std::invalid_argument("svg::render: empty axis range");
    for (const Curve& c : spec.curves) {
        if (c.x.size() != c.y.size())
            throw std::invalid_argument("svg::render: curve '" + c.label + "' size mismatch");
        for (std::size_t i = 1; i < c.x.size(); ++i)
            if (!(c.x[i] > c.x[i - 1]))
                throw std::invalid_argument("svg::render: curve '" + c.label +
                                            "' x values must be strictly increasing");
    }

    const double ml = 64, mr = 16, mt = spec.title.empty() ? 16 : 36, mb = 46;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;
    auto X = [&](double x) { return ml + (x - spec.x_min) / (spec.x_max - spec.x_min) * pw; };
    auto Y = [&](double y) {
        return mt + (1.0 - (y - spec.y_min) / (spec.y_max - spec.y_min)) * ph;
    };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // grid + ticks
    const double xs = nice_step(spec.x_max - spec.x_min, 8);
    const double ys = nice_step(spec.y_max - spec.y_min, 8);
    s += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double t = std::ceil(spec.x_min / xs) * xs; t <= spec.x_max + 1e-12 * xs; t += xs)
        s += "<line x1=\"" + num(X(t)) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(X(t)) +
             "\" y2=\"" + num(mt + ph) + "\"/>\n";
    for (double t = std::ceil(spec.y_min / ys) * ys; t <= spec.y_max + 1e-12 * ys; t += ys)
        s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(Y(t)) + "\" x2=\"" + num(ml + pw) +
             "\" y2=\"" + num(Y(t)) + "\"/>\n";
    s += "</g>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (double t = std::ceil(spec.x_min / xs) * xs; t <= spec.x_max + 1e-12 * xs; t += xs)
        s += "<text x=\"" + num(X(t)) + "\" y=\"" + num(mt + ph + 16) +
             "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
    for (double t = std::ceil(spec.y_min / ys) * ys; t <= spec.y_max + 1e-12 * ys; t += ys)
        s += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(Y(t) + 4) +
             "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
    s += "</g>\n";

    // curves (split the polyline when samples leave the y-range)
    for (std::size_t ci = 0; ci < spec.curves.size(); ++ci) {
        const Curve& c = spec.curves[ci];
        const char* color = palette[ci % 6];
        std::string pts;
        bool open = false;
        auto flush = [&]() {
            if (open && !pts.empty())
                s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                     "\" stroke-width=\"1.8\" points=\"" + pts + "\"/>\n";
            pts.clear();
            open = false;
        };
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            const bool in_range = c.x[i] >= spec.x_min && c.x[i] <= spec.x_max &&
                                  c.y[i] >= spec.y_min && c.y[i] <= spec.y_max &&
                                  std::isfinite(c.y[i]);
            if (!in_range) {
                flush();
                continue;
            }
            pts += num(X(c.x[i])) + "," + num(Y(c.y[i])) + " ";
            open = true;
        }
        flush();
    }

    // markers
    for (const Marker& m : spec.markers) {
        s += "<circle cx=\"" + num(X(m.x)) + "\" cy=\"" + num(Y(m.y)) +
             "\" r=\"4\" fill=\"black\"/>\n";
        if (!m.label.empty())
            s += "<text x=\"" + num(X(m.x) + 7) + "\" y=\"" + num(Y(m.y) - 7) +
                 "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(m.label) +
                 "</text>\n";
    }

    // legend
    double ly = mt + 14;
    for (std::size_t ci = 0; ci < spec.curves.size(); ++ci) {
        const char* color = palette[ci % 6];
        s += "<line x1=\"" + num(ml + pw - 110) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
             num(ml + pw - 88) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(ml + pw - 82) + "\" y=\"" + num(ly) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" +
             xml_escape(spec.curves[ci].label) + "</text>\n";
        ly += 16;
    }

    // frame + labels
    s += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    if (!spec.title.empty())
        s += "<text x=\"" + num(ml + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\" font-size=\"15\">" +
             xml_escape(spec.title) + "</text>\n";
    s += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(mt + ph + 36) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(spec.x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " +
         num(mt + ph / 2) + ")\">" + xml_escape(spec.y_label) + "</text>\n";
    s += "</svg>\n";
    return s;
}

void write_file(const PlotSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw mf::io_error("svg: cannot open '" + path + "' for writing");
    out << render(spec);
    if (!out)
        throw mf::io_error("svg: write to '" + path + "' failed");
}

} // namespace mf::svg
