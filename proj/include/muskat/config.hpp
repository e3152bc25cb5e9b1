#pragma once

#include <optional>
#include <string>
#include <vector>

#include "muskat/muskat1d.hpp"
#include "muskat/muskat2d.hpp"
#include "muskat/timestepping.hpp"

namespace muskat {

struct ModeSpec1D {
    int k = 0;
    double amplitude = 0.0;
    double phase = 0.0;  // term: amplitude * cos(k x + phase)
};

struct ModeSpec2D {
    int k1 = 0, k2 = 0;
    double amplitude = 0.0;
    double phase = 0.0;
};

struct BumpSpec {
    double center1 = 0.0, center2 = 0.0;
    double width = 1.0;
    double height = 1.0;  // peak value; profile height*exp(1 - 1/(1-u^2))
};

struct RunConfig {
    std::string scenario;
    int dimension = 1;

    int n = 256, n2 = 0;
    double length = kTwoPi, length2 = kTwoPi;
    DomainKind kind = DomainKind::PeriodicTorus;

    double rho1 = 1.0, rho2 = 2.0;

    std::vector<ModeSpec1D> modes;
    std::vector<ModeSpec2D> modes2d;
    std::optional<BumpSpec> bump;
    std::string initial_file;

    StepControl control;
    Scheme scheme = Scheme::Rk4;
    Quadrature1DConfig quad1d;
    Quadrature2DConfig quad2d;

    std::string output_dir = "out";
    int sample_stride = 1;
};

// Known scenario presets, one per behavior under study.
std::vector<std::string> scenario_names();
RunConfig scenario_preset(const std::string& name);

// Flat "key = value" text, one pair per line, '#' comments, dotted section
// keys. Unknown keys are hard errors with a line number.
RunConfig parse_config(const std::string& text);

// Applies one "key=value" pair (CLI --override) on top of a parsed config.
void apply_override(RunConfig& cfg, const std::string& pair);

ScalarField1D build_initial_1d(const RunConfig& cfg);
ScalarField2D build_initial_2d(const RunConfig& cfg);

}  // namespace muskat
