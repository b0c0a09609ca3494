#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mf/cli_commands.hpp"
#include "mf/errors.hpp"

namespace {

using namespace mf::cli;

struct GlobalOpts {
    std::string format = "csv";
    std::string out;
    double tol = 1e-8;
    bool tol_given = false;
    bool quiet = false;
};

void write_output(const OutputTable& table, const GlobalOpts& g) {
    const std::string body = (g.format == "json") ? table.to_json() : table.to_csv();
    if (g.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f)
        throw mf::io_error("cannot open '" + g.out + "' for writing");
    f << body;
    if (!f)
        throw mf::io_error("write to '" + g.out + "' failed");
}

void note(const GlobalOpts& g, const std::string& msg) {
    if (!g.quiet)
        std::cerr << msg << "\n";
}

std::string sidecar_path(const std::string& svg_path) {
    const auto dot = svg_path.rfind('.');
    if (dot != std::string::npos && svg_path.substr(dot) == ".svg")
        return svg_path.substr(0, dot) + ".csv";
    return svg_path + ".csv";
}

// ranges for integer options like --l-range 0:3
std::pair<int, int> parse_int_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw usage_error("bad integer range '" + text + "', expected min:max");
    try {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        return {lo, hi};
    } catch (const std::exception&) {
        throw usage_error("bad integer range '" + text + "', expected min:max");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maxwell fish-eye zero-energy states and their supersymmetric partner "
                 "structure"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("MF_DEFAULT_TOL"))
        g.tol = std::atof(env);
    app.add_option("--format", g.format, "Output format (csv|json)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "Write output to PATH instead of stdout");
    auto* tol_opt = app.add_option("--tol", g.tol, "Tolerance (command-specific meaning)");
    app.add_flag("--quiet", g.quiet, "Suppress progress notes on stderr");

    // potential
    auto* c_pot = app.add_subcommand("potential", "Tabulate a potential");
    std::string pot_kind;
    double pot_l = -1.0, pot_w = 0.0, pot_R = 0.0;
    std::string pot_range;
    bool pot_log = false;
    c_pot->add_option("--kind", pot_kind, "minus|plus|mf|classical")->required();
    c_pot->add_option("--l", pot_l, "Angular number (minus/plus kinds)");
    c_pot->add_option("--w", pot_w, "Coupling constant (mf/classical kinds)");
    c_pot->add_option("--R", pot_R, "Lens radius (classical kind)");
    c_pot->add_option("--rho", pot_range, "Range min:max:count (r in length units for kind=classical)")
        ->required();
    c_pot->add_flag("--log", pot_log, "Log-spaced samples");

    // wavefunction
    auto* c_wf = app.add_subcommand("wavefunction", "Tabulate R_nl and u_nl");
    int wf_n = 1, wf_l = 0;
    std::string wf_range;
    bool wf_log = false, wf_normalized = false;
    c_wf->add_option("--n", wf_n, "Principal quantum number")->required();
    c_wf->add_option("--l", wf_l, "Angular quantum number")->required();
    c_wf->add_option("--rho", wf_range, "Range min:max:count")->required();
    c_wf->add_flag("--log", wf_log, "Log-spaced samples");
    c_wf->add_flag("--normalized", wf_normalized, "Apply the 3D radial normalization (l >= 1)");

    // spectrum
    auto* c_sp = app.add_subcommand("spectrum", "Solve the coupling eigenvalues w(l, n_r)");
    std::string sp_l = "0:3", sp_nr = "0:3";
    c_sp->add_option("--l-range", sp_l, "l range min:max")->capture_default_str();
    c_sp->add_option("--nr-range", sp_nr, "n_r range min:max")->capture_default_str();

    // susy-verify
    auto* c_sv = app.add_subcommand("susy-verify", "Partner/factorization identity suite");
    std::string sv_l = "1:10";
    std::string sv_range = "0.05:20:200";
    bool sv_linear = false;
    c_sv->add_option("--l-range", sv_l, "l range min:max")->capture_default_str();
    c_sv->add_option("--rho", sv_range, "Verification grid min:max:count")->capture_default_str();
    c_sv->add_flag("--linear", sv_linear, "Linear grid spacing (default: logarithmic)");

    // critical
    auto* c_cr = app.add_subcommand("critical", "Fold point of the fermionic potential");

    // pocket
    auto* c_po = app.add_subcommand("pocket", "Stationary structure of U+ at given l");
    double po_l = 0.0;
    c_po->add_option("--l", po_l, "Angular parameter (real)")->required();

    // continuum
    auto* c_co = app.add_subcommand("continuum", "Fermionic continuum solution");
    int co_l = 0;
    double co_k = 1.0, co_rho_max = 0.0;
    bool co_free = false;
    c_co->add_option("--l", co_l, "Angular number")->required();
    c_co->add_option("--k", co_k, "Wavenumber (> 0)")->required();
    c_co->add_option("--rho-max", co_rho_max, "Grid end (defaults to max(40, 30/k))");
    c_co->add_flag("--free", co_free, "Control mode: potential replaced by zero");

    // plot-fig1
    auto* c_fig = app.add_subcommand("plot-fig1", "Emit the partner-potential chart (SVG + CSV)");
    std::string fig_panel;
    int fig_samples = 300;
    c_fig->add_option("--panel", fig_panel, "a (bosonic) or b (fermionic)")->required();
    c_fig->add_option("--samples", fig_samples, "Samples per curve")->capture_default_str();

    // global options (--format/--out/--tol/--quiet) may appear after the
    // subcommand name
    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return exit_ok;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    g.tol_given = tol_opt->count() > 0;

    try {
        if (*c_pot) {
            Range r = parse_range(pot_range);
            r.log_spaced = pot_log;
            write_output(potential_table(pot_kind, pot_l, pot_w, pot_R, r), g);
        } else if (*c_wf) {
            Range r = parse_range(wf_range);
            r.log_spaced = wf_log;
            write_output(wavefunction_table(wf_n, wf_l, r, wf_normalized, g.tol), g);
        } else if (*c_sp) {
            const auto [lmin, lmax] = parse_int_range(sp_l);
            const auto [nmin, nmax] = parse_int_range(sp_nr);
            const double tol = g.tol_given ? g.tol : 1e-4;
            SpectrumResult res = spectrum_table(lmin, lmax, nmin, nmax, tol);
            write_output(res.table, g);
            if (!res.all_ok) {
                std::cerr << res.failures;
                return exit_verify_failed;
            }
            note(g, "spectrum: all couplings within tol");
        } else if (*c_sv) {
            const auto [lmin, lmax] = parse_int_range(sv_l);
            Range r = parse_range(sv_range);
            r.log_spaced = !sv_linear;
            VerifyResult res = susy_verify_table(lmin, lmax, r);
            write_output(res.table, g);
            if (!res.all_ok) {
                std::cerr << res.failures;
                return exit_verify_failed;
            }
            note(g, "susy-verify: all identities hold");
        } else if (*c_cr) {
            write_output(critical_table(g.tol), g);
        } else if (*c_po) {
            PocketResult res = pocket_table(po_l);
            write_output(res.table, g);
            note(g, res.summary);
        } else if (*c_co) {
            if (co_rho_max <= 0.0)
                co_rho_max = std::max(40.0, 30.0 / co_k);
            write_output(continuum_table(co_l, co_k, co_rho_max, co_free), g);
        } else if (*c_fig) {
            if (g.out.empty())
                throw usage_error("plot-fig1: --out PATH is required");
            if (fig_panel.size() != 1)
                throw usage_error("plot-fig1: panel must be 'a' or 'b'");
            Fig1Result fig = make_fig1(fig_panel[0], g.tol, fig_samples);
            mf::svg::write_file(fig.plot, g.out);
            const std::string csv_path = sidecar_path(g.out);
            std::ofstream csv(csv_path, std::ios::binary);
            if (!csv)
                throw mf::io_error("cannot open '" + csv_path + "' for writing");
            csv << fig.sidecar.to_csv();
            if (!csv)
                throw mf::io_error("write to '" + csv_path + "' failed");
            note(g, "wrote " + g.out + " and " + csv_path);
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const mf::accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return exit_accuracy;
    } catch (const mf::not_found_error& e) {
        std::cerr << "not found: " << e.what() << "\n";
        return exit_not_found;
    } catch (const mf::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verify_failed;
    }
    return exit_ok;
}
