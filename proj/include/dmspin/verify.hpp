// verify.hpp — closed-form vs brute-force cross-checks over a parameter grid,
// aggregated into the report behind the `verify` CLI command.

#pragma once

#include <string>
#include <vector>

namespace dmspin::verify {

// Grid over J in [-2,2] (J = 0 dropped), D in [0,3], T in [0.05,5].
struct Grid {
    std::vector<double> J;
    std::vector<double> D;
    std::vector<double> T;
};

Grid standard_grid(int density);

// Worst-case deviations over the grid, one per comparison.
double max_rel_err_partition_function(const Grid& grid);
double max_abs_err_spectrum(const Grid& grid);
double max_abs_err_gibbs_state(const Grid& grid);
double max_abs_err_thermal_invariants(const Grid& grid);
double max_abs_err_channel_concurrence(const Grid& grid);
double max_abs_err_xstate(const Grid& grid);
double max_abs_err_avg_fidelity(const Grid& grid, int quadrature_n);

// Side-by-side characterization of the published output-concurrence formula
// against the protocol oracle. The formula is reported, never asserted.
struct Eq8Characterization {
    double max_abs_dev = 0.0;          // worst |printed - oracle| on the grid
    double min_ratio = 0.0;            // oracle/printed where both are nonzero
    double max_ratio = 0.0;
    int zero_region_mismatches = 0;    // disagreements farther than one cell
                                       // from any zero/nonzero boundary
    double spot_printed = 0.0;         // J=1, D=0, T=0.01, C_in=1
    double spot_oracle = 0.0;
};

Eq8Characterization characterize_eq8(const Grid& grid);

enum class Status { pass, fail, report };

struct Check {
    std::string name;
    double value;       // measured error (or reported figure)
    double tolerance;   // 0 for report-only rows
    Status status;
    std::string note;
};

struct Report {
    int grid_density = 0;
    std::vector<Check> checks;

    bool all_required_pass() const;
};

// Runs every comparison on a density^3 grid (density >= 5).
Report run(int grid_density);

}  // namespace dmspin::verify
