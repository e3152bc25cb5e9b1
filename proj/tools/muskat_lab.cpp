#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "muskat/acceptance.hpp"
#include "muskat/scenario.hpp"
#include "muskat/summation.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw muskat::ConfigError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

muskat::RunConfig load_config(const std::string& path,
                              const std::vector<std::string>& overrides,
                              const std::string& out_dir) {
    muskat::RunConfig cfg = muskat::parse_config(read_file(path));
    for (const auto& pair : overrides) muskat::apply_override(cfg, pair);
    if (!out_dir.empty()) {
        cfg.output_dir = out_dir;
    } else if (const char* env = std::getenv("MUSKAT_LAB_OUT"); env && *env) {
        cfg.output_dir = env;
    }
    return cfg;
}

std::string default_out() {
    if (const char* env = std::getenv("MUSKAT_LAB_OUT"); env && *env) return env;
    return "out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for viscosity-matched porous-media interfaces"};
    app.require_subcommand(1);

    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = 0;
    app.add_option("--out", out_dir, "Output directory (overrides MUSKAT_LAB_OUT)");
    app.add_option("--override", overrides, "Config override key=value (repeatable)");
    app.add_option("--threads", threads, "Worker threads (0 = auto)");
    app.fallthrough();  // allow the global flags after the subcommand too

    std::string run_config, probe_config, probe_points, conv_config;
    bool slow = false;
    int only = 0;

    auto* run_cmd = app.add_subcommand("run", "Integrate a configured scenario");
    run_cmd->add_option("config", run_config, "Config file")->required();

    auto* accept_cmd = app.add_subcommand("accept", "Run the acceptance suite");
    accept_cmd->add_flag("--slow", slow, "Include the slow criterion");
    accept_cmd->add_option("--only", only, "Run a single criterion (1-13)");

    auto* probe_cmd = app.add_subcommand("probe", "Evaluate the velocity at query points");
    probe_cmd->add_option("config", probe_config, "Config file")->required();
    probe_cmd->add_option("points", probe_points, "Points file (x1 x2 x3 per line)")
        ->required();

    auto* conv_cmd = app.add_subcommand("convergence", "Measure RK4 order by dt-halving");
    conv_cmd->add_option("config", conv_config, "Config file")->required();

    CLI11_PARSE(app, argc, argv);
    muskat::set_thread_count(threads);

    try {
        if (run_cmd->parsed()) {
            const muskat::RunConfig cfg = load_config(run_config, overrides, out_dir);
            const muskat::ScenarioResult result = muskat::run_scenario(cfg, std::cout);
            std::cout << "report: " << result.report_path << '\n';
            if (!result.series_path.empty())
                std::cout << "series: " << result.series_path << '\n';
            return result.exit_status();
        }
        if (accept_cmd->parsed()) {
            const std::string dir = out_dir.empty() ? default_out() + "/acceptance"
                                                    : out_dir;
            return muskat::acceptance_suite(std::cout, slow, only, dir);
        }
        if (probe_cmd->parsed()) {
            const muskat::RunConfig cfg = load_config(probe_config, overrides, out_dir);
            return muskat::run_probe(cfg, probe_points, std::cout, std::cerr);
        }
        const muskat::RunConfig cfg = load_config(conv_config, overrides, out_dir);
        const double order = muskat::measure_convergence_order(cfg, std::cout);
        std::cout << "order " << order << '\n';
        return order >= 3.8 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
