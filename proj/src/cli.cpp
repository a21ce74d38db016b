#include "dmspin/cli.hpp"

#include <fstream>
#include <numbers>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmspin/concurrence.hpp"
#include "dmspin/model.hpp"
#include "dmspin/sweep.hpp"
#include "dmspin/teleport.hpp"
#include "dmspin/verify.hpp"

namespace dmspin::cli {

namespace {

using nlohmann::json;
using sweep::format_value;

const char* level_name(model::Level level) {
    switch (level) {
        case model::Level::E11: return "E11";
        case model::Level::E00: return "E00";
        case model::Level::Plus: return "Plus";
        default: return "Minus";
    }
}

const char* status_name(verify::Status s) {
    switch (s) {
        case verify::Status::pass: return "pass";
        case verify::Status::fail: return "fail";
        default: return "report";
    }
}

struct CommonOpts {
    double J = 1.0, D = 0.0, T = 1.0;
    double theta = std::numbers::pi / 2.0, phi = 0.0, c_in = 1.0;
    int quadrature_n = 32;
    std::string format = "csv";
    std::string out_path;
};

// One labelled row of scalars, emitted as CSV columns or a JSON object.
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;  // already formatted

    void add(const std::string& key, double v) { fields.emplace_back(key, format_value(v)); }
    void add(const std::string& key, const std::string& v) { fields.emplace_back(key, v); }
};

std::string records_to_csv(const std::vector<Record>& records) {
    std::string out;
    for (std::size_t i = 0; i < records.front().fields.size(); ++i) {
        if (i) out += ',';
        out += records.front().fields[i].first;
    }
    out += '\n';
    for (const auto& rec : records) {
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
            if (i) out += ',';
            out += rec.fields[i].second;
        }
        out += '\n';
    }
    return out;
}

std::string records_to_json(const std::vector<Record>& records) {
    json arr = json::array();
    for (const auto& rec : records) {
        json obj;
        for (const auto& [key, value] : rec.fields) {
            if (value == "NA") {
                obj[key] = nullptr;
            } else {
                try {
                    obj[key] = std::stod(value);
                } catch (const std::exception&) {
                    obj[key] = value;
                }
            }
        }
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

void emit(const CommonOpts& opts, const std::string& csv, const std::string& jsn,
          std::ostream& out) {
    const std::string& payload = (opts.format == "json") ? jsn : csv;
    if (opts.out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + opts.out_path);
    file << payload;
}

void emit_records(const CommonOpts& opts, const std::vector<Record>& records,
                  std::ostream& out) {
    emit(opts, records_to_csv(records), records_to_json(records), out);
}

void add_common_flags(CLI::App* sub, CommonOpts& opts, bool wants_input, bool wants_temp) {
    sub->add_option("--J", opts.J, "spin coupling (J > 0 antiferromagnetic)");
    sub->add_option("--D", opts.D, "DM interaction strength along z");
    if (wants_temp) sub->add_option("--T", opts.T, "temperature (k = 1)");
    if (wants_input) {
        sub->add_option("--theta", opts.theta, "input-state polar angle in [0, pi]");
        sub->add_option("--phi", opts.phi, "input-state phase in [0, 2pi]");
        sub->add_option("--c-in", opts.c_in, "input concurrence in [0, 1]");
    }
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", opts.out_path, "output path (default stdout)");
}

void run_spectrum(const CommonOpts& opts, std::ostream& out) {
    const auto spectrum =
        model::spectrum_closed_form(model::ModelParams(opts.J, opts.D, opts.T));
    static const char* kets[4] = {"11", "10", "01", "00"};
    std::vector<Record> records;
    for (const auto& entry : spectrum) {
        Record rec;
        rec.add("label", std::string(level_name(entry.label)));
        rec.add("energy", entry.energy);
        for (int i = 0; i < 4; ++i) {
            rec.add(std::string("re_") + kets[i], entry.state[i].real());
            rec.add(std::string("im_") + kets[i], entry.state[i].imag());
        }
        records.push_back(std::move(rec));
    }
    emit_records(opts, records, out);
}

void run_thermal(const CommonOpts& opts, std::ostream& out) {
    const auto state = model::thermal_state(model::ModelParams(opts.J, opts.D, opts.T));
    std::vector<Record> records;
    {
        Record rec;
        rec.add("field", std::string("Z"));
        rec.add("value", state.Z);
        records.push_back(std::move(rec));
    }
    {
        Record rec;
        rec.add("field", std::string("log_Z"));
        rec.add("value", state.log_Z);
        records.push_back(std::move(rec));
    }
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            Record re, im;
            const std::string tag = std::to_string(r + 1) + "_" + std::to_string(c + 1);
            re.add("field", "rho_" + tag + "_re");
            re.add("value", state.rho(r, c).real());
            im.add("field", "rho_" + tag + "_im");
            im.add("value", state.rho(r, c).imag());
            records.push_back(std::move(re));
            records.push_back(std::move(im));
        }
    }
    emit_records(opts, records, out);
}

void run_concurrence(const CommonOpts& opts, std::ostream& out) {
    const model::ModelParams params(opts.J, opts.D, opts.T);
    Record rec;
    rec.add("J", opts.J);
    rec.add("D", opts.D);
    rec.add("T", opts.T);
    rec.add("C_channel", model::channel_concurrence(params));
    rec.add("C_wootters", concurrence::wootters_concurrence(model::thermal_state(params).rho));
    emit_records(opts, {rec}, out);
}

void run_critical_temp(const CommonOpts& opts, std::ostream& out) {
    const auto tc = model::critical_temperature(opts.J, opts.D);
    Record rec;
    rec.add("J", opts.J);
    rec.add("D", opts.D);
    rec.add("T_c", tc ? format_value(*tc) : std::string("NA"));
    emit_records(opts, {rec}, out);
}

void run_teleport(const CommonOpts& opts, std::ostream& out) {
    const model::ModelParams params(opts.J, opts.D, opts.T);
    const teleport::PureInput input(opts.theta, opts.phi);
    Record rec;
    rec.add("J", opts.J);
    rec.add("D", opts.D);
    rec.add("T", opts.T);
    rec.add("theta", opts.theta);
    rec.add("phi", opts.phi);
    rec.add("C_in", input.input_concurrence());
    rec.add("C_out_oracle", teleport::output_concurrence_oracle(params, input));
    rec.add("C_out_paper",
            teleport::output_concurrence_paper(params, input.input_concurrence()));
    emit_records(opts, {rec}, out);
}

void run_fidelity(const CommonOpts& opts, std::ostream& out) {
    const model::ModelParams params(opts.J, opts.D, opts.T);
    const teleport::PureInput input(opts.theta, opts.phi);
    const auto probs = teleport::channel_probabilities(model::thermal_state(params));
    Record rec;
    rec.add("J", opts.J);
    rec.add("D", opts.D);
    rec.add("T", opts.T);
    rec.add("theta", opts.theta);
    rec.add("phi", opts.phi);
    rec.add("F", teleport::fidelity(input, teleport::teleport_output(input, probs)));
    rec.add("F_avg_closed", teleport::average_fidelity_closed(params));
    rec.add("F_avg_quadrature",
            teleport::average_fidelity_quadrature(params, opts.quadrature_n, opts.quadrature_n));
    emit_records(opts, {rec}, out);
}

int run_verify(const CommonOpts& opts, int grid_density, std::ostream& out) {
    const verify::Report report = verify::run(grid_density);
    std::vector<Record> records;
    for (const auto& check : report.checks) {
        Record rec;
        rec.add("check", check.name);
        rec.add("value", check.value);
        rec.add("tolerance", check.tolerance);
        rec.add("status", std::string(status_name(check.status)));
        rec.add("note", check.note);
        records.push_back(std::move(rec));
    }
    emit_records(opts, records, out);
    return report.all_required_pass() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermal entanglement and teleportation for a DM-coupled qubit pair"};
    app.require_subcommand(1);

    CommonOpts opts;
    int grid_density = 10;
    sweep::SweepSpec sweep_spec;
    std::string axis1_text, axis2_text;

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and eigenvectors");
    add_common_flags(spectrum, opts, false, false);

    CLI::App* thermal = app.add_subcommand("thermal", "partition function and Gibbs state");
    add_common_flags(thermal, opts, false, true);

    CLI::App* conc = app.add_subcommand("concurrence", "thermal concurrence of the pair");
    add_common_flags(conc, opts, false, true);

    CLI::App* crit = app.add_subcommand("critical-temp", "temperature where entanglement dies");
    add_common_flags(crit, opts, false, false);

    CLI::App* tele = app.add_subcommand("teleport", "teleported concurrence for a pure input");
    add_common_flags(tele, opts, true, true);

    CLI::App* fid = app.add_subcommand("fidelity", "teleportation fidelity and its average");
    add_common_flags(fid, opts, true, true);
    fid->add_option("--quadrature-n", opts.quadrature_n, "quadrature nodes per axis (>= 8)");

    CLI::App* swp = app.add_subcommand("sweep", "grid sweep of a quantity");
    swp->add_option("--quantity", sweep_spec.quantity, "quantity to evaluate")->required();
    swp->add_option("--axis1", axis1_text, "name:start:stop:count")->required();
    swp->add_option("--axis2", axis2_text, "name:start:stop:count");
    add_common_flags(swp, opts, true, true);
    swp->add_option("--quadrature-n", opts.quadrature_n, "quadrature nodes per axis (>= 8)");

    CLI::App* ver = app.add_subcommand("verify", "closed-form vs oracle report");
    ver->add_option("--grid", grid_density, "grid density per axis (>= 5)");
    add_common_flags(ver, opts, false, false);

    std::vector<const char*> argv;
    argv.push_back("dmspin");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (spectrum->parsed()) {
            run_spectrum(opts, out);
        } else if (thermal->parsed()) {
            run_thermal(opts, out);
        } else if (conc->parsed()) {
            run_concurrence(opts, out);
        } else if (crit->parsed()) {
            run_critical_temp(opts, out);
        } else if (tele->parsed()) {
            run_teleport(opts, out);
        } else if (fid->parsed()) {
            run_fidelity(opts, out);
        } else if (swp->parsed()) {
            sweep_spec.J = opts.J;
            sweep_spec.D = opts.D;
            sweep_spec.T = opts.T;
            sweep_spec.theta = opts.theta;
            sweep_spec.phi = opts.phi;
            sweep_spec.c_in = opts.c_in;
            sweep_spec.quadrature_n = opts.quadrature_n;
            sweep_spec.axis1 = sweep::parse_axis(axis1_text);
            if (!axis2_text.empty()) sweep_spec.axis2 = sweep::parse_axis(axis2_text);
            const auto rows = sweep::run_sweep(sweep_spec);
            emit(opts, sweep::to_csv(sweep_spec, rows), sweep::to_json(sweep_spec, rows), out);
        } else if (ver->parsed()) {
            return run_verify(opts, grid_density, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        err << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace dmspin::cli
