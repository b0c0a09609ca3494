#include "mf/cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "mf/errors.hpp"
#include "mf/fisheye.hpp"
#include "mf/numeric.hpp"
#include "mf/susy.hpp"

namespace mf::cli {

const char* tool_version = "0.1.0";

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

void base_meta(OutputTable& t, const std::string& command) {
    t.add_meta("command", command);
    t.add_meta("version", tool_version);
}

std::string fmt(double v) { return format_double(v); }

} // namespace

Range parse_range(const std::string& text) {
    Range r;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> r.min >> c1 >> r.max >> c2 >> r.count) || c1 != ':' || c2 != ':' ||
        !in.eof())
        throw usage_error("bad range '" + text + "', expected min:max:count");
    if (!(r.min > 0.0) || !(r.max > r.min) || r.count < 2)
        throw usage_error("bad range '" + text + "': need 0 < min < max and count >= 2");
    return r;
}

RadialGrid make_grid(const Range& range) {
    return range.log_spaced
               ? RadialGrid::logarithmic(range.min, range.max, static_cast<std::size_t>(range.count))
               : RadialGrid::uniform(range.min, range.max, static_cast<std::size_t>(range.count));
}

OutputTable potential_table(const std::string& kind, double l, double w, double R,
                            const Range& range) {
    OutputTable t;
    base_meta(t, "potential");
    t.add_meta("kind", kind);
    t.add_meta("range", fmt(range.min) + ":" + fmt(range.max) + ":" + std::to_string(range.count));
    const RadialGrid grid = make_grid(range);

    if (kind == "plus" || kind == "minus") {
        if (!(l >= 0.0))
            throw usage_error("potential: --l is required (and must be >= 0) for kind=" + kind);
        t.add_meta("l", fmt(l));
        const susy::Partner p = (kind == "plus") ? susy::Partner::plus : susy::Partner::minus;
        if (kind == "plus") {
            t.columns = {"rho", "u_plus"};
            for (double rho : grid.points())
                t.add_row({rho, susy::u_eff(p, l, rho)});
        } else {
            // coupling column: the well strength (2l+1)(2l+3) = 4(l+1)^2 - 1
            t.columns = {"rho", "u_minus", "coupling"};
            const double coupling = (2.0 * l + 1.0) * (2.0 * l + 3.0);
            for (double rho : grid.points())
                t.add_row({rho, susy::u_eff(p, l, rho), coupling});
        }
    } else if (kind == "mf") {
        if (!(w > 0.0))
            throw usage_error("potential: --w is required (and must be > 0) for kind=mf");
        t.add_meta("w", fmt(w));
        t.columns = {"rho", "u_mf"};
        for (double rho : grid.points())
            t.add_row({rho, fisheye::mf_potential(rho, w)});
    } else if (kind == "classical") {
        if (!(w > 0.0) || !(R > 0.0))
            throw usage_error("potential: --w and --R are required for kind=classical");
        t.add_meta("w", fmt(w));
        t.add_meta("R", fmt(R));
        const fisheye::LensModel model(R, w);
        t.columns = {"r", "u_classical"};
        for (double r : grid.points())
            t.add_row({r, fisheye::classical_potential(r, model)});
    } else {
        throw usage_error("potential: unknown kind '" + kind +
                          "' (expected minus|plus|mf|classical)");
    }
    return t;
}

OutputTable wavefunction_table(int n, int l, const Range& range, bool normalized,
                               double quad_tol) {
    const fisheye::QuantumNumbers qn(n, l);
    OutputTable t;
    base_meta(t, "wavefunction");
    t.add_meta("n", std::to_string(n));
    t.add_meta("l", std::to_string(l));
    t.add_meta("normalized", normalized ? "true" : "false");
    t.add_meta("range", fmt(range.min) + ":" + fmt(range.max) + ":" + std::to_string(range.count));
    t.columns = {"rho", "R_nl", "u_nl"};

    const double N = normalized ? fisheye::normalization(qn, quad_tol) : 1.0;
    const RadialGrid grid = make_grid(range);
    for (double rho : grid.points()) {
        const double R = N * fisheye::radial_R(qn, rho);
        t.add_row({rho, R, rho * R});
    }
    return t;
}

SpectrumResult spectrum_table(int l_min, int l_max, int nr_min, int nr_max, double tol) {
    if (l_min < 0 || l_max < l_min || nr_min < 0 || nr_max < nr_min)
        throw usage_error("spectrum: need 0 <= l_min <= l_max and 0 <= nr_min <= nr_max");
    if (!(tol > 0.0))
        throw usage_error("spectrum: tol must be > 0");
    SpectrumResult res;
    OutputTable& t = res.table;
    base_meta(t, "spectrum");
    t.add_meta("l_range", std::to_string(l_min) + ":" + std::to_string(l_max));
    t.add_meta("nr_range", std::to_string(nr_min) + ":" + std::to_string(nr_max));
    t.add_meta("tol", fmt(tol));
    t.columns = {"l", "n_r", "n", "w_solved", "w_closed", "abs_delta"};

    std::ostringstream failures;
    const double solver_tol = std::clamp(0.01 * tol, 1e-10, 1e-6);
    for (int l = l_min; l <= l_max; ++l) {
        for (int nr = nr_min; nr <= nr_max; ++nr) {
            const int n = nr + l + 1;
            const double w_closed = fisheye::coupling_constant(n);
            double w_solved = nan_v, delta = nan_v;
            try {
                w_solved = numeric::solve_coupling(l, nr, solver_tol);
                delta = std::abs(w_solved - w_closed);
            } catch (const std::exception& e) {
                failures << "l=" << l << " n_r=" << nr << ": solver failure: " << e.what()
                         << "\n";
                res.all_ok = false;
            }
            if (std::isfinite(delta) && delta > tol) {
                failures << "l=" << l << " n_r=" << nr << ": |dw|=" << fmt(delta)
                         << " exceeds tol=" << fmt(tol) << "\n";
                res.all_ok = false;
            }
            t.add_row({static_cast<double>(l), static_cast<double>(nr),
                       static_cast<double>(n), w_solved, w_closed, delta});
        }
    }
    // degeneracy summary: enumerate (l, m) with l <= n-1, |m| <= l for every
    // n present and compare with n^2
    bool degeneracy_ok = true;
    const int n_max = l_max + nr_max + 1;
    for (int n = 1; n <= n_max; ++n) {
        int count = 0;
        for (int l = 0; l <= n - 1; ++l)
            count += 2 * l + 1;
        if (count != fisheye::degeneracy(n))
            degeneracy_ok = false;
    }
    t.add_meta("degeneracy_check",
               degeneracy_ok ? "n^2 verified for n <= " + std::to_string(n_max) : "FAILED");
    if (!degeneracy_ok)
        res.all_ok = false;
    res.failures = failures.str();
    return res;
}

VerifyResult susy_verify_table(int l_min, int l_max, const Range& range) {
    if (l_min < 0 || l_max < l_min)
        throw usage_error("susy-verify: need 0 <= l_min <= l_max");
    VerifyResult res;
    OutputTable& t = res.table;
    base_meta(t, "susy-verify");
    t.add_meta("l_range", std::to_string(l_min) + ":" + std::to_string(l_max));
    t.add_meta("range", fmt(range.min) + ":" + fmt(range.max) + ":" + std::to_string(range.count));
    t.columns = {"l",           "riccati_minus", "riccati_plus", "partner_pair",
                 "annihilation", "natanzon_map",  "natanzon_pot", "f_reconstruction"};

    const RadialGrid grid = make_grid(range);
    std::ostringstream failures;
    std::vector<double> ratios(grid.size());
    for (int l = l_min; l <= l_max; ++l) {
        double r_minus = 0, r_plus = 0, pair = 0, annih = 0, nat1 = 0, nat2 = 0;
        std::size_t idx = 0;
        for (double rho : grid.points()) {
            r_minus = std::max(r_minus,
                               std::abs(susy::riccati_residual(susy::Partner::minus, l, rho)));
            r_plus = std::max(r_plus,
                              std::abs(susy::riccati_residual(susy::Partner::plus, l, rho)));
            const double wp = susy::superpotential_deriv(l, rho);
            pair = std::max(pair, std::abs(susy::u_eff(susy::Partner::plus, l, rho) -
                                           susy::u_eff(susy::Partner::minus, l, rho) -
                                           2.0 * wp));
            // annihilation of the ground-sector factor, scaled by the larger term
            const double f = fisheye::f_l(l, rho);
            const double df = f * ((l + 1.0) / rho - (2.0 * l + 1.0) * rho / (1.0 + rho * rho));
            const double W = susy::superpotential(l, rho);
            const double scale = std::max(std::abs(df), std::abs(W * f));
            if (scale > 0.0)
                annih = std::max(annih, std::abs(df + W * f) / scale);
            const susy::NatanzonResiduals nr = susy::natanzon_residuals(l, rho);
            nat1 = std::max(nat1, std::abs(nr.point_map));
            nat2 = std::max(nat2, std::abs(nr.potential));
            ratios[idx++] = susy::f_from_Q(l, rho) / f;
        }
        // two-pass variance: the ratios agree to ~1e-13 relative, which a
        // one-pass sum-of-squares formula cannot resolve
        const double npts = static_cast<double>(grid.size());
        double mean = 0.0;
        for (double r : ratios)
            mean += r;
        mean /= npts;
        double var = 0.0;
        for (double r : ratios)
            var += (r - mean) * (r - mean);
        var /= npts;
        const double f_dev = std::sqrt(var) / mean;
        t.add_row({static_cast<double>(l), r_minus, r_plus, pair, annih, nat1, nat2, f_dev});

        auto check = [&](const char* name, double value, double bound) {
            if (!(value < bound)) {
                failures << "l=" << l << ": " << name << "=" << fmt(value) << " >= "
                         << fmt(bound) << "\n";
                res.all_ok = false;
            }
        };
        check("riccati_minus", r_minus, 1e-10);
        check("riccati_plus", r_plus, 1e-10);
        check("partner_pair", pair, 1e-11);
        check("annihilation", annih, 1e-9);
        check("natanzon_map", nat1, 1e-10);
        check("natanzon_pot", nat2, 1e-10);
        check("f_reconstruction", f_dev, 1e-10);
    }
    res.failures = failures.str();
    return res;
}

OutputTable critical_table(double tol) {
    if (!(tol > 0.0))
        throw usage_error("critical: tol must be > 0");
    const numeric::CriticalPoint cp = numeric::find_critical_l(tol);
    OutputTable t;
    base_meta(t, "critical");
    t.add_meta("tol", fmt(tol));
    t.columns = {"l_cr", "rho_cr", "resid_dU", "resid_d2U"};
    t.add_row({cp.l_cr, cp.rho_cr, cp.grad_residuals.first, cp.grad_residuals.second});
    return t;
}

PocketResult pocket_table(double l) {
    const RadialGrid scan = RadialGrid::uniform(0.2, 10.0, 4001);
    const numeric::PocketReport rep = numeric::pocket_analysis(l, scan);
    PocketResult res;
    OutputTable& t = res.table;
    base_meta(t, "pocket");
    t.add_meta("l", fmt(l));
    t.columns = {"l", "has_pocket", "rho_min", "u_min", "rho_max", "u_max", "depth"};
    if (rep.has_pocket()) {
        t.add_row({l, 1.0, rep.minimum->rho, rep.minimum->value, rep.maximum->rho,
                   rep.maximum->value, *rep.depth});
        res.summary = "pocket: minimum at rho=" + fmt(rep.minimum->rho) +
                      ", barrier at rho=" + fmt(rep.maximum->rho) +
                      ", depth=" + fmt(*rep.depth);
    } else {
        t.add_row({l, 0.0, nan_v, nan_v, nan_v, nan_v, nan_v});
        res.summary = "no pocket";
    }
    return res;
}

OutputTable continuum_table(int l, double k, double rho_max, bool free_mode) {
    if (!(k > 0.0))
        throw usage_error("continuum: k must be > 0");
    if (!(rho_max > 1.0))
        throw usage_error("continuum: rho-max must be > 1");
    const double h = 0.0025;
    const auto count = static_cast<std::size_t>(std::lround((rho_max - 0.005) / h)) + 1;
    const RadialGrid grid = RadialGrid::uniform(0.005, 0.005 + h * static_cast<double>(count - 1),
                                                count);
    const numeric::RadialSolution sol = free_mode ? numeric::solve_continuum_free(l, k, grid)
                                                  : numeric::solve_continuum(l, k, grid);
    const std::vector<double> res =
        free_mode ? numeric::continuum_residuals(sol, [](double) { return 0.0; })
                  : numeric::continuum_residuals(sol);

    OutputTable t;
    base_meta(t, "continuum");
    t.add_meta("l", std::to_string(l));
    t.add_meta("k", fmt(k));
    t.add_meta("rho_max", fmt(rho_max));
    t.add_meta("mode", free_mode ? "free" : "partner");
    t.add_meta("tail_phase", fmt(sol.boundary.tail_exponent_or_phase));
    t.add_meta("origin_exponent", fmt(sol.boundary.origin_exponent));
    t.columns = {"rho", "u1", "residual"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.add_row({grid[i], sol.values[i], res[i]});
    return t;
}

Fig1Result make_fig1(char panel, double tol, int samples) {
    if (panel != 'a' && panel != 'b')
        throw usage_error("plot-fig1: panel must be 'a' or 'b'");
    if (samples < 2)
        throw usage_error("plot-fig1: samples must be >= 2");

    Fig1Result out;
    svg::PlotSpec& plot = out.plot;
    OutputTable& csv = out.sidecar;
    base_meta(csv, "plot-fig1");
    csv.add_meta("panel", std::string(1, panel));
    csv.add_meta("samples", std::to_string(samples));

    plot.x_label = "rho";
    const std::vector<int> ls = (panel == 'a') ? std::vector<int>{1, 5, 10}
                                               : std::vector<int>{6, 7, 8};
    const double rho_lo = (panel == 'a') ? 0.2 : 0.4;
    const double rho_hi = 6.0;
    const RadialGrid grid = RadialGrid::uniform(rho_lo, rho_hi, static_cast<std::size_t>(samples));

    if (panel == 'a') {
        plot.title = "Bosonic effective potentials";
        plot.y_label = "U_eff^- (E0 units)";
        plot.x_min = rho_lo;
        plot.x_max = rho_hi;
        plot.y_min = -13.0;
        plot.y_max = 10.0;
        csv.columns = {"l", "rho", "u_minus"};
    } else {
        plot.title = "Fermionic effective potentials";
        plot.y_label = "U_eff^+ (E0 units)";
        plot.x_min = rho_lo;
        plot.x_max = rho_hi;
        plot.y_min = 0.0;
        plot.y_max = 12.0;
        csv.columns = {"l", "rho", "u_plus"};
    }

    const susy::Partner kind = (panel == 'a') ? susy::Partner::minus : susy::Partner::plus;
    for (int l : ls) {
        svg::Curve curve;
        curve.label = "l=" + std::to_string(l);
        for (double rho : grid.points()) {
            const double u = susy::u_eff(kind, l, rho);
            curve.x.push_back(rho);
            curve.y.push_back(u);
            csv.add_row({static_cast<double>(l), rho, u});
        }
        plot.curves.push_back(std::move(curve));
    }

    if (panel == 'b') {
        const numeric::CriticalPoint cp = numeric::find_critical_l(tol);
        const double u_cr = susy::u_eff(susy::Partner::plus, cp.l_cr, cp.rho_cr);
        char label[64];
        std::snprintf(label, sizeof(label), "l_cr=%.3f", cp.l_cr);
        plot.markers.push_back({cp.rho_cr, u_cr, label});
        csv.add_meta("l_cr", fmt(cp.l_cr));
        csv.add_meta("rho_cr", fmt(cp.rho_cr));
        csv.add_meta("u_at_critical", fmt(u_cr));
    }
    return out;
}

} // namespace mf::cli
