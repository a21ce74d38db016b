// sweep.hpp — parameter sweeps over the model and teleportation quantities,
// with deterministic CSV/JSON serialization.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dmspin::sweep {

// Axis names: J, D, T, theta, C_in. Values are linearly spaced, inclusive.
struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

// Quantities: channel_concurrence, C_out_oracle, C_out_paper, F_avg_closed,
// F_avg_quadrature, Tc, T_threshold.
struct SweepSpec {
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    std::string quantity;

    // Fixed values for whatever the axes do not override.
    double J = 1.0;
    double D = 0.0;
    double T = 1.0;
    double theta = 1.5707963267948966;  // pi/2
    double phi = 0.0;
    double c_in = 1.0;
    int quadrature_n = 32;
};

struct SweepRow {
    std::vector<double> axis_values;   // axis1 [, axis2]
    std::optional<double> value;       // empty = no solution
};

// Parses "name:start:stop:count"; throws std::invalid_argument on bad input.
AxisSpec parse_axis(const std::string& text);

// Throws std::invalid_argument with a usage message on any violation.
void validate(const SweepSpec& spec);

// Row-major over (axis1, axis2); deterministic for identical specs.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// CSV: header row (axis names + quantity), 12 significant digits, NA for empty.
std::string to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

// JSON array of row objects keyed by axis names and the quantity; null for empty.
std::string to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<SweepRow> rows;
};

ParsedCsv parse_csv(const std::string& text);

// %.12g formatting shared by every emitter.
std::string format_value(double v);

}  // namespace dmspin::sweep
