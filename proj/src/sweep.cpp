#include "dmspin/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dmspin/model.hpp"
#include "dmspin/teleport.hpp"

namespace dmspin::sweep {

namespace {

const std::vector<std::string> kAxisNames = {"J", "D", "T", "theta", "C_in"};
const std::vector<std::string> kQuantities = {
    "channel_concurrence", "C_out_oracle", "C_out_paper",
    "F_avg_closed",        "F_avg_quadrature", "Tc", "T_threshold"};

bool known(const std::vector<std::string>& set, const std::string& name) {
    return std::find(set.begin(), set.end(), name) != set.end();
}

std::vector<double> axis_points(const AxisSpec& axis) {
    std::vector<double> pts(axis.count);
    const double step = (axis.stop - axis.start) / (axis.count - 1);
    for (int i = 0; i < axis.count; ++i) pts[i] = axis.start + i * step;
    pts.back() = axis.stop;
    return pts;
}

struct Cell {
    double J, D, T, theta, phi, c_in;
    int quadrature_n;
};

void apply_axis(Cell& cell, const std::string& name, double value) {
    if (name == "J") cell.J = value;
    else if (name == "D") cell.D = value;
    else if (name == "T") cell.T = value;
    else if (name == "theta") cell.theta = value;
    else cell.c_in = value;  // C_in
}

std::optional<double> evaluate(const SweepSpec& spec, const Cell& cell) {
    const std::string& q = spec.quantity;
    if (q == "Tc" || q == "T_threshold") {
        try {
            return q == "Tc" ? model::critical_temperature(cell.J, cell.D)
                             : teleport::classical_threshold_temperature(cell.J, cell.D);
        } catch (const std::invalid_argument&) {
            return std::nullopt;  // J = 0 has no temperature scale
        }
    }
    const model::ModelParams params(cell.J, cell.D, cell.T);
    if (q == "channel_concurrence") return model::channel_concurrence(params);
    if (q == "C_out_oracle") {
        return teleport::output_concurrence_oracle(params, teleport::PureInput(cell.theta, cell.phi));
    }
    if (q == "C_out_paper") return teleport::output_concurrence_paper(params, cell.c_in);
    if (q == "F_avg_closed") return teleport::average_fidelity_closed(params);
    return teleport::average_fidelity_quadrature(params, cell.quadrature_n, cell.quadrature_n);
}

void validate_axis(const AxisSpec& axis) {
    if (!known(kAxisNames, axis.name)) {
        throw std::invalid_argument("sweep: unknown axis '" + axis.name + "'");
    }
    if (axis.count < 2) throw std::invalid_argument("sweep: axis count must be >= 2");
    if (!(axis.start < axis.stop)) {
        throw std::invalid_argument("sweep: axis start must be < stop");
    }
    if (axis.name == "T" && axis.start <= 0.0) {
        throw std::invalid_argument("sweep: T axis must be positive");
    }
    if (axis.name == "theta" && (axis.start < 0.0 || axis.stop > std::numbers::pi)) {
        throw std::invalid_argument("sweep: theta axis must lie in [0, pi]");
    }
    if (axis.name == "C_in" && (axis.start < 0.0 || axis.stop > 1.0)) {
        throw std::invalid_argument("sweep: C_in axis must lie in [0, 1]");
    }
}

}  // namespace

AxisSpec parse_axis(const std::string& text) {
    AxisSpec axis;
    std::istringstream in(text);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(in, field, ':')) fields.push_back(field);
    if (fields.size() != 4) {
        throw std::invalid_argument("axis: expected name:start:stop:count, got '" + text + "'");
    }
    axis.name = fields[0];
    try {
        axis.start = std::stod(fields[1]);
        axis.stop = std::stod(fields[2]);
        axis.count = std::stoi(fields[3]);
    } catch (const std::exception&) {
        throw std::invalid_argument("axis: non-numeric field in '" + text + "'");
    }
    return axis;
}

void validate(const SweepSpec& spec) {
    if (!known(kQuantities, spec.quantity)) {
        throw std::invalid_argument("sweep: unknown quantity '" + spec.quantity + "'");
    }
    validate_axis(spec.axis1);
    if (spec.axis2) {
        validate_axis(*spec.axis2);
        if (spec.axis2->name == spec.axis1.name) {
            throw std::invalid_argument("sweep: axis1 and axis2 must differ");
        }
    }
    if (!(spec.T > 0.0)) throw std::invalid_argument("sweep: fixed T must be positive");
    if (spec.theta < 0.0 || spec.theta > std::numbers::pi) {
        throw std::invalid_argument("sweep: fixed theta outside [0, pi]");
    }
    if (spec.phi < 0.0 || spec.phi > 2.0 * std::numbers::pi) {
        throw std::invalid_argument("sweep: fixed phi outside [0, 2pi]");
    }
    if (spec.c_in < 0.0 || spec.c_in > 1.0) {
        throw std::invalid_argument("sweep: fixed C_in outside [0, 1]");
    }
    if (spec.quantity == "F_avg_quadrature" && spec.quadrature_n < 8) {
        throw std::invalid_argument("sweep: quadrature n must be >= 8");
    }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate(spec);
    const std::vector<double> pts1 = axis_points(spec.axis1);
    const std::vector<double> pts2 =
        spec.axis2 ? axis_points(*spec.axis2) : std::vector<double>{0.0};

    std::vector<SweepRow> rows;
    rows.reserve(pts1.size() * pts2.size());
    for (double v1 : pts1) {
        for (double v2 : pts2) {
            Cell cell{spec.J, spec.D, spec.T, spec.theta, spec.phi, spec.c_in,
                      spec.quadrature_n};
            apply_axis(cell, spec.axis1.name, v1);
            SweepRow row;
            row.axis_values.push_back(v1);
            if (spec.axis2) {
                apply_axis(cell, spec.axis2->name, v2);
                row.axis_values.push_back(v2);
            }
            row.value = evaluate(spec, cell);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::string out = spec.axis1.name;
    if (spec.axis2) out += "," + spec.axis2->name;
    out += "," + spec.quantity + "\n";
    for (const auto& row : rows) {
        for (double v : row.axis_values) {
            out += format_value(v);
            out += ',';
        }
        out += row.value ? format_value(*row.value) : "NA";
        out += '\n';
    }
    return out;
}

std::string to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj;
        obj[spec.axis1.name] = row.axis_values[0];
        if (spec.axis2) obj[spec.axis2->name] = row.axis_values[1];
        if (row.value) {
            obj[spec.quantity] = *row.value;
        } else {
            obj[spec.quantity] = nullptr;
        }
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

ParsedCsv parse_csv(const std::string& text) {
    ParsedCsv parsed;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (first) {
            parsed.header = fields;
            first = false;
            continue;
        }
        if (fields.size() != parsed.header.size()) {
            throw std::invalid_argument("parse_csv: ragged row");
        }
        SweepRow row;
        for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
            row.axis_values.push_back(std::stod(fields[i]));
        }
        if (fields.back() == "NA") {
            row.value = std::nullopt;
        } else {
            row.value = std::stod(fields.back());
        }
        parsed.rows.push_back(std::move(row));
    }
    return parsed;
}

}  // namespace dmspin::sweep
