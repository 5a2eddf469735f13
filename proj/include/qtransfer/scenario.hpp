// Scenario runner behind the `simulate` command line tool: sweep a time
// grid for a configured model, emit a CSV of squared concurrences, check
// the applicable conservation rules at every grid point, and optionally
// cross-check each emitted value against the full-register brute force.
//
// CSV schema (pinned): header `t,cab2,sspc,yonac,` then `c_{I}_{J}2` for
// all I,J row-major, then `cA_b{J}2` for each J, then the same concurrence
// columns suffixed `_orc` when the oracle is enabled. Values carry 12
// significant digits; the time column is dimensionless g*t with
// g = (g_a + g_b)/2. The yonac field is filled only for the psi sector
// with two qubits per site.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qtransfer/dynamics.hpp"
#include "qtransfer/linalg.hpp"
#include "qtransfer/sector.hpp"

namespace qtransfer::scenario {

// Configuration problems (bad flag, unreadable file, constraint violation).
// The CLI maps these to exit code 1.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HelpRequested {
    std::string text;
};

enum class Model { jc, custom };

struct ScenarioConfig {
    sector::BellKind state = sector::BellKind::psi;
    double alpha = 0.7853981633974483;  // pi/4
    double beta = 0.0;
    std::size_t n_a = 2;
    std::size_t n_b = 2;
    Model model = Model::jc;
    double g_a = 1.0;
    double g_b = 1.0;
    double delta_a = 0.0;
    double delta_b = 0.0;
    double gamma = 0.0;
    double t_max = 12.0;  // in g*t units
    std::size_t steps = 500;
    double tol = 1e-10;
    bool oracle = false;
    std::string out;         // empty: CSV to stdout
    std::string dump_state;  // empty: no dump
    std::string ha_path;
    std::string hb_path;
    std::optional<linalg::CMatrix> h_a;  // loaded custom Hamiltonians
    std::optional<linalg::CMatrix> h_b;

    // Time-axis normalization (g*t units -> physical time).
    double g_mean() const;

    dynamics::JCParams jc_params() const { return {g_a, g_b, delta_a, delta_b}; }
};

// Parse `simulate` flags. Throws ConfigError on any usage or constraint
// violation and HelpRequested for --help. Custom Hamiltonian files are
// loaded (and Hermiticity-checked) here.
ScenarioConfig parse_args(int argc, const char* const* argv);

// Run the sweep: CSV to csv_out, human-readable rule summary to
// summary_out. Returns 0 when every applicable rule check (and oracle
// comparison) passes at cfg.tol, 2 otherwise.
int run(const ScenarioConfig& cfg, std::ostream& csv_out, std::ostream& summary_out);

// File-handling wrapper used by the CLI: honors cfg.out and cfg.dump_state.
int run(const ScenarioConfig& cfg);

}  // namespace qtransfer::scenario
