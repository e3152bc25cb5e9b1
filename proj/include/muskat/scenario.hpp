#pragma once

#include <iosfwd>

#include "muskat/config.hpp"
#include "muskat/diagnostics.hpp"

namespace muskat {

struct ScenarioResult {
    std::vector<Verdict> verdicts;
    std::string series_path;
    std::string report_path;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
    int exit_status() const { return all_pass() ? 0 : 1; }
};

// Integrates the configured scenario, writes the CSV series and the verdict
// report under cfg.output_dir, and returns the verdicts.
ScenarioResult run_scenario(const RunConfig& cfg, std::ostream& log);

template <class Field>
void emit_csv(const Trajectory<Field>& traj, const std::string& path);

// Reads "x1 x2 x3" triples (one per line) and writes
// "x1 x2 x3 v1 v2 v3" per sample.
int run_probe(const RunConfig& cfg, const std::string& points_path, std::ostream& out,
              std::ostream& log);

// RK4 self-convergence order under dt halving for the configured scenario.
double measure_convergence_order(const RunConfig& cfg, std::ostream& log);

}  // namespace muskat
