#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mf/svg.hpp"
#include "mf/table.hpp"

using namespace mf::cli;

TEST_CASE("double formatting round-trips 12 significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.25) == "-0.25");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    const double v = 6.876606651407495;
    CHECK(std::stod(format_double(v)) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("csv layout") {
    OutputTable t;
    t.columns = {"rho", "u_plus"};
    t.add_row({0.5, 2.25});
    t.add_row({1.0, -0.125});
    CHECK(t.to_csv() == "rho,u_plus\n0.5,2.25\n1,-0.125\n");
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("json layout carries metadata and marks non-finite as null") {
    OutputTable t;
    t.columns = {"a", "b"};
    t.add_meta("command", "pocket");
    t.add_meta("l", "6");
    t.add_row({1.0, std::numeric_limits<double>::quiet_NaN()});
    const std::string j = t.to_json();
    CHECK(j.find("\"command\": \"pocket\"") != std::string::npos);
    CHECK(j.find("\"columns\": [\"a\", \"b\"]") != std::string::npos);
    CHECK(j.find("null") != std::string::npos);
    CHECK(j.find("nan") == std::string::npos);
}

TEST_CASE("serialization is deterministic") {
    OutputTable t;
    t.columns = {"x", "y"};
    for (int i = 0; i < 50; ++i)
        t.add_row({0.1 * i, std::sin(0.1 * i)});
    CHECK(t.to_csv() == t.to_csv());
    CHECK(t.to_json() == t.to_json());
}

TEST_CASE("svg rendering") {
    mf::svg::PlotSpec spec;
    spec.title = "test";
    spec.x_label = "x";
    spec.y_label = "y";
    spec.x_min = 0.0;
    spec.x_max = 10.0;
    spec.y_min = -2.0;
    spec.y_max = 2.0;
    mf::svg::Curve c;
    c.label = "l=1";
    for (int i = 0; i <= 100; ++i) {
        c.x.push_back(0.1 * i);
        c.y.push_back(std::sin(0.1 * i));
    }
    spec.curves.push_back(c);
    spec.markers.push_back({5.0, 0.5, "mark"});

    const std::string svg = mf::svg::render(spec);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("l=1") != std::string::npos);
    CHECK(svg == mf::svg::render(spec)); // deterministic

    // out-of-range samples split the polyline instead of distorting the frame
    mf::svg::PlotSpec clipped = spec;
    clipped.y_max = 0.5;
    const std::string svg2 = mf::svg::render(clipped);
    CHECK(svg2.find("polyline") != std::string::npos);

    // non-monotone x rejected
    mf::svg::PlotSpec bad = spec;
    bad.curves[0].x[5] = bad.curves[0].x[4];
    CHECK_THROWS_AS(mf::svg::render(bad), std::invalid_argument);
}
