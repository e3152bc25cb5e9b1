#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "muskat/scenario.hpp"

using namespace muskat;

TEST_CASE("a minimal config applies the preset defaults") {
    const RunConfig cfg = parse_config("scenario = stable_decay_1d\n");
    CHECK(cfg.dimension == 1);
    CHECK(cfg.n == 256);
    CHECK(cfg.control.t_end == doctest::Approx(5.0));
    REQUIRE(cfg.modes.size() == 1);
    CHECK(cfg.modes[0].k == 1);
    CHECK(cfg.modes[0].amplitude == doctest::Approx(0.3));
}

TEST_CASE("config errors carry the offending line number") {
    CHECK_THROWS_WITH_AS(parse_config("scenario = stable_decay_1d\ngrd.n = 256\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario = stable_decay_1d\ngrid.n = 257\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 256\n"), ConfigError);  // no scenario
    CHECK_THROWS_AS(parse_config("scenario = no_such_thing\n"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("scenario = stable_decay_1d\ngrid.n\n"),
                         doctest::Contains("line 2"), ConfigError);
}

TEST_CASE("comments and overrides behave like config lines") {
    RunConfig cfg = parse_config(
        "# comment\nscenario = stable_decay_1d\ngrid.n = 128  # trailing\n");
    CHECK(cfg.n == 128);

    apply_override(cfg, "control.t_end=1.5");
    CHECK(cfg.control.t_end == doctest::Approx(1.5));
    apply_override(cfg, "initial.mode=2 0.05 0");
    REQUIRE(cfg.modes.size() == 1);  // user initial data replaces the preset's
    CHECK(cfg.modes[0].k == 2);
    CHECK_THROWS_AS(apply_override(cfg, "nonsense"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "scenario=slope_bound_1d"), ConfigError);
}

TEST_CASE("repeated initial modes accumulate within one config") {
    const RunConfig cfg = parse_config(
        "scenario = stable_decay_1d\n"
        "initial.mode = 1 0.3 0\n"
        "initial.mode = 3 0.1 0\n");
    REQUIRE(cfg.modes.size() == 2);
    CHECK(cfg.modes[1].k == 3);
}

TEST_CASE("every catalog preset builds a valid initial state") {
    for (const auto& name : scenario_names()) {
        const RunConfig cfg = scenario_preset(name);
        if (cfg.dimension == 1)
            CHECK_NOTHROW((void)build_initial_1d(cfg));
        else
            CHECK_NOTHROW((void)build_initial_2d(cfg));
    }
    CHECK_THROWS_AS(scenario_preset("unknown"), ConfigError);
}

TEST_CASE("CSV emission matches the documented layout and round-trips") {
    const GridSpec1D g = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f = make_field(g);
    for (int j = 0; j < g.n; ++j) f[j] = 0.123456789012345 * std::cos(g.node(j));

    Trajectory<ScalarField1D> traj;
    traj.times = {0.0};
    traj.states = {f};
    traj.records = {observe(f, 0.0)};

    const std::string path = "out/test_series.csv";
    std::filesystem::create_directories("out");
    emit_csv(traj, path);

    std::ifstream in(path);
    std::string header, row, extra;
    REQUIRE(std::getline(in, header));
    CHECK(header == "t,linf,l1,mean,fmax,fmin,max_slope,argmax_index,spectrum_tail");
    REQUIRE(std::getline(in, row));
    CHECK(!std::getline(in, extra));

    // reread reproduces the recorded value to the last digit
    std::stringstream cells(row);
    std::string cell;
    std::getline(cells, cell, ',');
    std::getline(cells, cell, ',');
    CHECK(std::stod(cell) == traj.records[0].linf);
    std::remove(path.c_str());
}

TEST_CASE("the reduction scenario runs end to end") {
    RunConfig cfg = scenario_preset("reduction_check");
    cfg.n = 32;  // keep the test quick; acceptance runs the full size
    cfg.output_dir = "out/test_reduction";
    std::ostringstream log;
    const ScenarioResult result = run_scenario(cfg, log);
    CHECK(result.all_pass());
    CHECK(log.str().find("CHECK reduction_gap") != std::string::npos);
    CHECK(std::ifstream(result.report_path).good());
}

TEST_CASE("probing an on-interface point fails with a nonzero status") {
    RunConfig cfg = scenario_preset("velocity_probe");
    cfg.n = 32;
    cfg.n2 = 32;
    const std::string points = "out/test_points.txt";
    std::filesystem::create_directories("out");
    {
        std::ofstream out(points);
        out << "0 0 0.1\n";  // exactly on the interface above x = 0
    }
    std::ostringstream sink, log;
    CHECK(run_probe(cfg, points, sink, log) != 0);
    CHECK(log.str().find("interface") != std::string::npos);

    {
        std::ofstream out(points);
        out << "0 0 3.0\n1.0 2.0 -4.0\n";
    }
    std::ostringstream ok;
    CHECK(run_probe(cfg, points, ok, log) == 0);
    int lines = 0;
    std::string line;
    std::istringstream scan(ok.str());
    while (std::getline(scan, line)) ++lines;
    CHECK(lines == 2);
    std::remove(points.c_str());
}
