#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mf/cli_commands.hpp"
#include "mf/errors.hpp"
#include "mf/fisheye.hpp"
#include "mf/susy.hpp"

using namespace mf::cli;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MF_CLI_BIN) + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("range parsing") {
    const Range r = parse_range("0.5:6:200");
    CHECK(r.min == doctest::Approx(0.5));
    CHECK(r.max == doctest::Approx(6.0));
    CHECK(r.count == 200);
    CHECK_THROWS_AS(parse_range("1:2"), usage_error);
    CHECK_THROWS_AS(parse_range("2:1:10"), usage_error);
    CHECK_THROWS_AS(parse_range("0.5:6:1"), usage_error);
    CHECK_THROWS_AS(parse_range("abc"), usage_error);
}

TEST_CASE("potential table schema and values") {
    Range r = parse_range("0.5:6:200");
    const OutputTable plus = potential_table("plus", 7.0, 0.0, 0.0, r);
    CHECK(plus.columns == std::vector<std::string>{"rho", "u_plus"});
    CHECK(plus.rows.size() == 200);

    // row value at rho = 1 for kind=plus, l=1
    const OutputTable p1 = potential_table("plus", 1.0, 0.0, 0.0, parse_range("1:2:3"));
    CHECK(p1.rows[0][1] == doctest::Approx(2.25).epsilon(1e-14));

    const OutputTable minus = potential_table("minus", 1.0, 0.0, 0.0, r);
    CHECK(minus.columns == std::vector<std::string>{"rho", "u_minus", "coupling"});
    for (const auto& row : minus.rows)
        CHECK(row[2] == doctest::Approx(15.0));

    CHECK_THROWS_AS(potential_table("plus", -1.0, 0.0, 0.0, r), usage_error);
    CHECK_THROWS_AS(potential_table("banana", 1.0, 0.0, 0.0, r), usage_error);
}

TEST_CASE("wavefunction table") {
    const OutputTable t = wavefunction_table(1, 0, parse_range("0.2:4:20"), false, 1e-10);
    CHECK(t.columns == std::vector<std::string>{"rho", "R_nl", "u_nl"});
    // u column proportional to f_0
    const double c0 = t.rows[0][2] / mf::fisheye::f_l(0, t.rows[0][0]);
    for (const auto& row : t.rows)
        CHECK(row[2] / mf::fisheye::f_l(0, row[0]) == doctest::Approx(c0).epsilon(1e-12));

    // u(1) = 0 exactly on-grid for n=2, l=0
    const OutputTable n2 = wavefunction_table(2, 0, parse_range("0.5:1.5:3"), false, 1e-10);
    CHECK(n2.rows[1][0] == doctest::Approx(1.0));
    CHECK(std::abs(n2.rows[1][2]) < 1e-15);

    // sign changes in u equal n_r (skipping exact zeros: the node at rho = 1
    // can land on a grid point)
    const OutputTable n31 = wavefunction_table(3, 1, parse_range("0.05:25:500"), false, 1e-10);
    int flips = 0;
    double prev = 0.0;
    for (const auto& row : n31.rows) {
        if (row[2] == 0.0)
            continue;
        if (prev != 0.0 && std::signbit(row[2]) != std::signbit(prev))
            ++flips;
        prev = row[2];
    }
    CHECK(flips == 1);

    CHECK_THROWS_AS(wavefunction_table(2, 0, parse_range("0.5:1.5:3"), true, 1e-10),
                    mf::non_normalizable_error);
}

TEST_CASE("spectrum table") {
    const SpectrumResult res = spectrum_table(0, 2, 0, 2, 1e-4);
    CHECK(res.all_ok);
    CHECK(res.table.rows.size() == 9);
    for (const auto& row : res.table.rows) {
        CHECK(row[2] == row[0] + row[1] + 1.0); // n = l + n_r + 1
        CHECK(row[5] <= 1e-4);                  // |dw|
        const double n = row[2];
        CHECK(row[4] == doctest::Approx(4.0 * n * n - 1.0));
    }
}

TEST_CASE("susy-verify table passes its thresholds") {
    Range r = parse_range("0.05:20:120");
    r.log_spaced = true;
    const VerifyResult res = susy_verify_table(1, 10, r);
    CHECK(res.all_ok);
    CHECK(res.failures.empty());
    CHECK(res.table.rows.size() == 10);
    for (const auto& row : res.table.rows) {
        CHECK(row[1] < 1e-10); // riccati minus
        CHECK(row[2] < 1e-10); // riccati plus
        CHECK(row[3] < 1e-11); // partner pair
        CHECK(row[4] < 1e-9);  // annihilation
        CHECK(row[5] < 1e-10); // natanzon map
        CHECK(row[6] < 1e-10); // natanzon potential
        CHECK(row[7] < 1e-10); // f reconstruction
    }
}

TEST_CASE("critical and pocket tables") {
    const OutputTable crit = critical_table(1e-10);
    CHECK(crit.rows.size() == 1);
    CHECK(crit.rows[0][0] == doctest::Approx(6.876).epsilon(0.0015));
    CHECK(crit.rows[0][1] == doctest::Approx(1.599).epsilon(0.0007));

    const PocketResult no_pocket = pocket_table(6.0);
    CHECK(no_pocket.summary == "no pocket");
    CHECK(no_pocket.table.rows[0][1] == 0.0);

    const PocketResult pocket = pocket_table(8.0);
    CHECK(pocket.table.rows[0][1] == 1.0);
    CHECK(pocket.table.rows[0][2] < pocket.table.rows[0][4]); // rho_min < rho_max
    CHECK(pocket.table.rows[0][6] > 0.0);
}

TEST_CASE("continuum table") {
    const OutputTable t = continuum_table(0, 1.0, 40.0, true);
    CHECK(t.columns == std::vector<std::string>{"rho", "u1", "residual"});
    double phase = 1e9;
    for (const auto& [k, v] : t.metadata)
        if (k == "tail_phase")
            phase = std::stod(v);
    CHECK(std::abs(phase) < 1e-3);
    for (const auto& row : t.rows)
        CHECK(row[2] <= 1e-6);
    // metadata echoes the inputs
    bool saw_l = false, saw_k = false, saw_mode = false;
    for (const auto& [k, v] : t.metadata) {
        saw_l |= (k == "l" && v == "0");
        saw_k |= (k == "k" && v == "1");
        saw_mode |= (k == "mode" && v == "free");
    }
    CHECK(saw_l);
    CHECK(saw_k);
    CHECK(saw_mode);
}

TEST_CASE("fig1 assembly") {
    const Fig1Result a = make_fig1('a', 1e-8, 40);
    CHECK(a.plot.curves.size() == 3);
    CHECK(a.plot.curves[0].label == "l=1");
    CHECK(a.plot.curves[1].label == "l=5");
    CHECK(a.plot.curves[2].label == "l=10");
    CHECK(a.sidecar.rows.size() == 3 * 40);
    CHECK(a.sidecar.columns == std::vector<std::string>{"l", "rho", "u_minus"});

    const Fig1Result b = make_fig1('b', 1e-8, 40);
    CHECK(b.plot.curves.size() == 3);
    CHECK(b.plot.markers.size() == 1);
    CHECK(b.plot.markers[0].x == doctest::Approx(1.599).epsilon(1e-3));
    CHECK(b.sidecar.columns == std::vector<std::string>{"l", "rho", "u_plus"});
    CHECK_THROWS_AS(make_fig1('c', 1e-8, 40), usage_error);
}

TEST_CASE("cli subprocess: exit codes") {
    CHECK(run_cli("potential --kind plus --l 7 --rho 0.5:6:50 --out /tmp/mf_p.csv") == 0);
    CHECK(run_cli("potential --kind plus --l 7 --rho bad 2>/dev/null") == 2);
    CHECK(run_cli("potential --kind plus --rho 0.5:6:50 2>/dev/null") == 2); // missing --l
    CHECK(run_cli("wavefunction --n 2 --l 0 --rho 0.5:2:10 --normalized 2>/dev/null") == 3);
    CHECK(run_cli("continuum --l 7 --k 0.5 --rho-max 20 2>/dev/null >/dev/null") == 4);
    CHECK(run_cli("plot-fig1 --panel b --out /nonexistent-dir/x.svg --quiet 2>/dev/null") == 6);
    CHECK(run_cli("--help >/dev/null") == 0);
    // an unreachable tolerance flags the rows and fails the run
    CHECK(run_cli("spectrum --l-range 0:0 --nr-range 0:0 --tol 1e-13 "
                  ">/dev/null 2>/dev/null") == 1);
    // env default tolerance is honored
    CHECK(std::system(("MF_DEFAULT_TOL=1e-9 " + std::string(MF_CLI_BIN) +
                       " critical --quiet >/dev/null")
                          .c_str()) == 0);
}

TEST_CASE("cli subprocess: determinism and schema") {
    REQUIRE(run_cli("potential --kind plus --l 7 --rho 0.5:6:200 --out /tmp/mf_a.csv "
                    "--quiet") == 0);
    REQUIRE(run_cli("potential --kind plus --l 7 --rho 0.5:6:200 --out /tmp/mf_b.csv "
                    "--quiet") == 0);
    const std::string a = slurp("/tmp/mf_a.csv");
    CHECK(a == slurp("/tmp/mf_b.csv")); // byte-identical
    CHECK(a.substr(0, a.find('\n')) == "rho,u_plus");
    int lines = 0;
    for (char c : a)
        if (c == '\n')
            ++lines;
    CHECK(lines == 201); // header + 200 rows

    REQUIRE(run_cli("susy-verify --l-range 1:6 --rho 0.05:20:80 --quiet --out "
                    "/tmp/mf_sv.csv") == 0);

    REQUIRE(run_cli("plot-fig1 --panel b --out /tmp/mf_fig1b.svg --quiet") == 0);
    const std::string svg = slurp("/tmp/mf_fig1b.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("l_cr") != std::string::npos);
    const std::string csv = slurp("/tmp/mf_fig1b.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "l,rho,u_plus");

    // json format carries metadata
    REQUIRE(run_cli("pocket --l 8 --format json --out /tmp/mf_pocket.json --quiet") == 0);
    const std::string j = slurp("/tmp/mf_pocket.json");
    CHECK(j.find("\"command\": \"pocket\"") != std::string::npos);
    CHECK(j.find("\"rows\"") != std::string::npos);
}
