#pragma once

#include <stdexcept>
#include <string>

#include "mf/grid.hpp"
#include "mf/svg.hpp"
#include "mf/table.hpp"

namespace mf::cli {

// Exit-code contract shared by every subcommand.
enum ExitCode : int {
    exit_ok = 0,
    exit_verify_failed = 1,
    exit_usage = 2,
    exit_domain = 3,
    exit_accuracy = 4,
    exit_not_found = 5,
    exit_io = 6,
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "min:max:count" with optional log spacing.
struct Range {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_spaced = false;
};

Range parse_range(const std::string& text); // throws usage_error
RadialGrid make_grid(const Range& range);

// Tool version echoed into every table's metadata.
extern const char* tool_version;

OutputTable potential_table(const std::string& kind, double l, double w, double R,
                            const Range& range);

OutputTable wavefunction_table(int n, int l, const Range& range, bool normalized,
                               double quad_tol);

struct SpectrumResult {
    OutputTable table;
    bool all_ok = true;
    std::string failures; // human-readable list of offending rows
};
SpectrumResult spectrum_table(int l_min, int l_max, int nr_min, int nr_max, double tol);

struct VerifyResult {
    OutputTable table;
    bool all_ok = true;
    std::string failures;
};
VerifyResult susy_verify_table(int l_min, int l_max, const Range& range);

OutputTable critical_table(double tol);

struct PocketResult {
    OutputTable table;
    std::string summary; // "no pocket" or "pocket: ..."
};
PocketResult pocket_table(double l);

OutputTable continuum_table(int l, double k, double rho_max, bool free_mode);

struct Fig1Result {
    svg::PlotSpec plot;
    OutputTable sidecar;
};
Fig1Result make_fig1(char panel, double tol, int samples);

} // namespace mf::cli
