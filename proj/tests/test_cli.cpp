#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dmspin/cli.hpp"
#include "dmspin/model.hpp"
#include "dmspin/sweep.hpp"
#include "dmspin/verify.hpp"

using namespace dmspin;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sweep axis parsing") {
    const auto axis = sweep::parse_axis("J:-2:2:101");
    CHECK(axis.name == "J");
    CHECK(axis.start == -2.0);
    CHECK(axis.stop == 2.0);
    CHECK(axis.count == 101);
    CHECK_THROWS_AS(sweep::parse_axis("J:-2:2"), std::invalid_argument);
    CHECK_THROWS_AS(sweep::parse_axis("J:a:2:5"), std::invalid_argument);
}

TEST_CASE("sweep validation") {
    sweep::SweepSpec spec;
    spec.quantity = "channel_concurrence";
    spec.axis1 = {"J", -2.0, 2.0, 5};
    CHECK_NOTHROW(sweep::validate(spec));

    sweep::SweepSpec bad = spec;
    bad.quantity = "nope";
    CHECK_THROWS_AS(sweep::validate(bad), std::invalid_argument);

    bad = spec;
    bad.axis1.count = 1;
    CHECK_THROWS_AS(sweep::validate(bad), std::invalid_argument);

    bad = spec;
    bad.axis1 = {"T", -1.0, 2.0, 5};
    CHECK_THROWS_AS(sweep::validate(bad), std::invalid_argument);

    bad = spec;
    bad.axis2 = spec.axis1;
    CHECK_THROWS_AS(sweep::validate(bad), std::invalid_argument);
}

TEST_CASE("sweep reproduces direct calls and stays deterministic") {
    sweep::SweepSpec spec;
    spec.quantity = "channel_concurrence";
    spec.axis1 = {"T", 0.1, 2.1, 9};
    spec.J = -0.5;
    spec.D = 1.0;

    const auto rows = sweep::run_sweep(spec);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
        REQUIRE(row.value.has_value());
        const double direct =
            model::channel_concurrence(model::ModelParams(spec.J, spec.D, row.axis_values[0]));
        CHECK(*row.value == direct);
    }

    const std::string csv_a = sweep::to_csv(spec, rows);
    const std::string csv_b = sweep::to_csv(spec, sweep::run_sweep(spec));
    CHECK(csv_a == csv_b);
}

TEST_CASE("sweep grid layout is row-major with axis1 outer") {
    sweep::SweepSpec spec;
    spec.quantity = "F_avg_closed";
    spec.axis1 = {"J", -1.0, 1.0, 2};
    spec.axis2 = sweep::AxisSpec{"T", 0.5, 1.5, 3};

    const auto rows = sweep::run_sweep(spec);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].axis_values == std::vector<double>{-1.0, 0.5});
    CHECK(rows[1].axis_values == std::vector<double>{-1.0, 1.0});
    CHECK(rows[5].axis_values == std::vector<double>{1.0, 1.5});
}

TEST_CASE("no-solution cells serialize as NA / null") {
    sweep::SweepSpec spec;
    spec.quantity = "Tc";
    spec.axis1 = {"J", -1.0, 1.0, 3};  // hits J = 0, which has no scale
    spec.D = 0.0;

    const auto rows = sweep::run_sweep(spec);
    REQUIRE(rows.size() == 3);
    CHECK(!rows[0].value.has_value());  // J = -1, D = 0: never entangled
    CHECK(!rows[1].value.has_value());  // J = 0
    CHECK(rows[2].value.has_value());   // J = 1: 2/ln3

    const std::string csv = sweep::to_csv(spec, rows);
    CHECK(csv.find("NA") != std::string::npos);
    const std::string json = sweep::to_json(spec, rows);
    CHECK(json.find("null") != std::string::npos);
}

TEST_CASE("csv round-trip") {
    sweep::SweepSpec spec;
    spec.quantity = "channel_concurrence";
    spec.axis1 = {"J", -2.0, 2.0, 7};
    spec.axis2 = sweep::AxisSpec{"D", 0.0, 3.0, 4};
    spec.T = 0.5;

    const auto rows = sweep::run_sweep(spec);
    const std::string csv = sweep::to_csv(spec, rows);
    const auto parsed = sweep::parse_csv(csv);

    REQUIRE(parsed.header.size() == 3);
    CHECK(parsed.header[0] == "J");
    CHECK(parsed.header[1] == "D");
    CHECK(parsed.header[2] == "channel_concurrence");
    REQUIRE(parsed.rows.size() == rows.size());
    CHECK(sweep::to_csv(spec, parsed.rows) == csv);
}

TEST_CASE("cli teleport command output") {
    const auto result = run_cli({"teleport", "--J", "1", "--D", "0", "--T", "0.01",
                                 "--theta", "1.5707963267948966"});
    CHECK(result.code == 0);
    CHECK(result.out.find("C_out_oracle") != std::string::npos);

    const auto parsed = sweep::parse_csv(result.out);
    REQUIRE(parsed.rows.size() == 1);
    // columns: J,D,T,theta,phi,C_in,C_out_oracle,C_out_paper -> 7 axis-ish + value
    const auto& row = parsed.rows[0];
    CHECK(row.axis_values[5] == doctest::Approx(1.0));          // C_in
    CHECK(row.axis_values[6] == doctest::Approx(1.0).epsilon(1e-4));  // oracle
    REQUIRE(row.value.has_value());
    CHECK(*row.value == doctest::Approx(0.5).epsilon(1e-3));    // printed formula
}

TEST_CASE("cli sweep runs are byte-identical") {
    const std::vector<std::string> args = {"sweep", "--quantity", "channel_concurrence",
                                           "--axis1", "J:-2:2:11", "--axis2", "D:0:3:7",
                                           "--T", "0.5"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.substr(0, a.out.find('\n')) == "J,D,channel_concurrence");
}

TEST_CASE("cli ferromagnetic column of the J-D concurrence grid is zero") {
    const auto result = run_cli({"sweep", "--quantity", "channel_concurrence", "--axis1",
                                 "J:-2:2:9", "--axis2", "D:0:3:4", "--T", "0.5"});
    REQUIRE(result.code == 0);
    const auto parsed = sweep::parse_csv(result.out);
    for (const auto& row : parsed.rows) {
        if (row.axis_values[0] < 0.0 && row.axis_values[1] == 0.0) {
            CHECK(*row.value == 0.0);
        }
    }
}

TEST_CASE("cli json format emits a json array") {
    const auto result = run_cli({"concurrence", "--J", "1", "--T", "0.5", "--format", "json"});
    CHECK(result.code == 0);
    CHECK(result.out.front() == '[');
    CHECK(result.out.find("C_channel") != std::string::npos);
}

TEST_CASE("cli usage errors exit with code 1") {
    CHECK(run_cli({"sweep", "--quantity", "bogus", "--axis1", "J:0:1:5"}).code == 1);
    CHECK(run_cli({"sweep", "--quantity", "channel_concurrence", "--axis1", "J:0:1:1"}).code == 1);
    CHECK(run_cli({"unknown-command"}).code == 1);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"teleport", "--theta", "9"}).code == 1);
}

TEST_CASE("cli critical-temp reports NA for the ferromagnetic chain") {
    const auto result = run_cli({"critical-temp", "--J", "-1", "--D", "0"});
    CHECK(result.code == 0);
    CHECK(result.out.find("NA") != std::string::npos);

    const auto antiferro = run_cli({"critical-temp", "--J", "1", "--D", "0"});
    const auto parsed = sweep::parse_csv(antiferro.out);
    REQUIRE(parsed.rows.size() == 1);
    REQUIRE(parsed.rows[0].value.has_value());
    CHECK(*parsed.rows[0].value == doctest::Approx(2.0 / std::log(3.0)).epsilon(1e-6));
}

TEST_CASE("cli help exits cleanly") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"sweep", "--help"}).code == 0);
}

TEST_CASE("verification report on a coarse grid") {
    const auto report = verify::run(5);
    CHECK(report.all_required_pass());

    int pass = 0, fail = 0, info = 0;
    bool saw_tc_row = false, saw_deviation_row = false;
    for (const auto& check : report.checks) {
        switch (check.status) {
            case verify::Status::pass: ++pass; break;
            case verify::Status::fail: ++fail; break;
            case verify::Status::report: ++info; break;
        }
        if (check.name == "critical_temperature_J1_D0") saw_tc_row = true;
        if (check.note.find("paper-formula deviation") != std::string::npos) {
            saw_deviation_row = true;
            CHECK(check.value > 0.0);  // the deviation is real and reported
        }
    }
    CHECK(fail == 0);
    CHECK(pass >= 8);
    CHECK(info == 2);
    CHECK(saw_tc_row);
    CHECK(saw_deviation_row);
    CHECK_THROWS_AS(verify::run(3), std::invalid_argument);
}

TEST_CASE("cli verify command") {
    const auto result = run_cli({"verify", "--grid", "5"});
    CHECK(result.code == 0);
    CHECK(result.out.substr(0, 6) == "check,");
    CHECK(result.out.find("paper-formula deviation") != std::string::npos);
    CHECK(result.out.find("fail") == std::string::npos);
}
