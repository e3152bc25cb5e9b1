#include "muskat/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace muskat {

namespace {

constexpr double kPi = kTwoPi / 2.0;

double bump_profile(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

[[noreturn]] void fail(int line, const std::string& what) {
    std::ostringstream msg;
    if (line > 0) msg << "line " << line << ": ";
    msg << what;
    throw ConfigError(msg.str());
}

double parse_real(const std::string& v, int line) {
    size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(v, &used);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
    if (used != v.size()) fail(line, "trailing characters after number '" + v + "'");
    if (!std::isfinite(value)) fail(line, "value must be finite");
    return value;
}

long parse_integer(const std::string& v, int line) {
    size_t used = 0;
    long value = 0;
    try {
        value = std::stol(v, &used);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
    if (used != v.size()) fail(line, "trailing characters after integer '" + v + "'");
    return value;
}

std::vector<double> parse_tuple(const std::string& v, size_t count, int line) {
    std::istringstream in(v);
    std::vector<double> vals;
    double x;
    while (in >> x) vals.push_back(x);
    if (!in.eof() || vals.size() != count)
        fail(line, "expected " + std::to_string(count) + " numbers, got '" + v + "'");
    return vals;
}

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Tracks whether a user key already cleared the preset's initial data, so
// repeated initial.* lines append while the first one replaces.
struct ApplyState {
    bool initial_replaced = false;
};

void clear_initial(RunConfig& cfg, ApplyState& st) {
    if (st.initial_replaced) return;
    st.initial_replaced = true;
    cfg.modes.clear();
    cfg.modes2d.clear();
    cfg.bump.reset();
    cfg.initial_file.clear();
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               int line, ApplyState& st) {
    if (key == "scenario") {
        // handled by the caller (selects the preset before other keys apply)
        return;
    }
    if (key == "dimension") {
        const long d = parse_integer(value, line);
        if (d != 1 && d != 2) fail(line, "dimension must be 1 or 2");
        cfg.dimension = static_cast<int>(d);
    } else if (key == "grid.n") {
        cfg.n = static_cast<int>(parse_integer(value, line));
    } else if (key == "grid.n2") {
        cfg.n2 = static_cast<int>(parse_integer(value, line));
    } else if (key == "grid.length") {
        cfg.length = parse_real(value, line);
    } else if (key == "grid.length2") {
        cfg.length2 = parse_real(value, line);
    } else if (key == "grid.kind") {
        if (value == "periodic" || value == "torus")
            cfg.kind = DomainKind::PeriodicTorus;
        else if (value == "line")
            cfg.kind = DomainKind::TruncatedLine;
        else
            fail(line, "grid.kind must be 'periodic' or 'line'");
    } else if (key == "grid.allow_large") {
        if (value == "true" || value == "1")
            cfg.quad2d.allow_large_grid = true;
        else if (value == "false" || value == "0")
            cfg.quad2d.allow_large_grid = false;
        else
            fail(line, "grid.allow_large must be true or false");
    } else if (key == "params.rho1") {
        cfg.rho1 = parse_real(value, line);
    } else if (key == "params.rho2") {
        cfg.rho2 = parse_real(value, line);
    } else if (key == "initial.mode") {
        clear_initial(cfg, st);
        const auto v = parse_tuple(value, 3, line);
        cfg.modes.push_back({static_cast<int>(std::lround(v[0])), v[1], v[2]});
    } else if (key == "initial.mode2d") {
        clear_initial(cfg, st);
        const auto v = parse_tuple(value, 4, line);
        cfg.modes2d.push_back({static_cast<int>(std::lround(v[0])),
                               static_cast<int>(std::lround(v[1])), v[2], v[3]});
    } else if (key == "initial.bump") {
        clear_initial(cfg, st);
        const auto v = parse_tuple(value, 3, line);
        cfg.bump = BumpSpec{v[0], 0.0, v[1], v[2]};
    } else if (key == "initial.bump2d") {
        clear_initial(cfg, st);
        const auto v = parse_tuple(value, 4, line);
        cfg.bump = BumpSpec{v[0], v[1], v[2], v[3]};
    } else if (key == "initial.file") {
        clear_initial(cfg, st);
        cfg.initial_file = value;
    } else if (key == "control.dt") {
        if (value == "auto")
            cfg.control.dt.reset();
        else
            cfg.control.dt = parse_real(value, line);
    } else if (key == "control.cfl_safety") {
        cfg.control.cfl_safety = parse_real(value, line);
    } else if (key == "control.t_end") {
        cfg.control.t_end = parse_real(value, line);
    } else if (key == "control.max_steps") {
        cfg.control.max_steps = parse_integer(value, line);
    } else if (key == "control.blowup_slope") {
        cfg.control.blowup_slope = parse_real(value, line);
    } else if (key == "scheme") {
        if (value == "rk4")
            cfg.scheme = Scheme::Rk4;
        else if (value == "integrating_factor")
            cfg.scheme = Scheme::IntegratingFactor;
        else
            fail(line, "scheme must be 'rk4' or 'integrating_factor'");
    } else if (key == "quad1d.offset") {
        if (value == "collocated")
            cfg.quad1d.node_offset = NodeOffset::Collocated;
        else if (value == "half_shifted")
            cfg.quad1d.node_offset = NodeOffset::HalfShifted;
        else
            fail(line, "quad1d.offset must be 'collocated' or 'half_shifted'");
    } else if (key == "quad1d.singular") {
        if (value == "analytic_limit")
            cfg.quad1d.singular_rule = SingularRule1D::AnalyticLimit;
        else if (value == "skip")
            cfg.quad1d.singular_rule = SingularRule1D::SkipNode;
        else
            fail(line, "quad1d.singular must be 'analytic_limit' or 'skip'");
    } else if (key == "quad1d.radius") {
        cfg.quad1d.line_truncation_radius = parse_real(value, line);
    } else if (key == "quad2d.layers") {
        cfg.quad2d.image_layers = static_cast<int>(parse_integer(value, line));
    } else if (key == "quad2d.singular") {
        if (value == "puncture")
            cfg.quad2d.singular_rule = SingularRule2D::PunctureCell;
        else if (value == "polar_patch")
            cfg.quad2d.singular_rule = SingularRule2D::PolarPatch;
        else
            fail(line, "quad2d.singular must be 'puncture' or 'polar_patch'");
    } else if (key == "quad2d.rings") {
        cfg.quad2d.polar_patch_rings = static_cast<int>(parse_integer(value, line));
    } else if (key == "output.dir") {
        cfg.output_dir = value;
    } else if (key == "output.stride") {
        cfg.sample_stride = static_cast<int>(parse_integer(value, line));
        if (cfg.sample_stride < 1) fail(line, "output.stride must be >= 1");
    } else {
        fail(line, "unknown key '" + key + "'");
    }
}

void validate_config(const RunConfig& cfg) {
    // Grid construction enforces the detailed grid preconditions.
    if (cfg.dimension == 1) {
        (void)make_grid(cfg.n, cfg.length, cfg.kind);
    } else {
        (void)make_grid_2d(cfg.n, cfg.n2 > 0 ? cfg.n2 : cfg.n, cfg.length,
                           cfg.length2 > 0.0 ? cfg.length2 : cfg.length);
    }
    (void)PhysParams(cfg.rho1, cfg.rho2);
    cfg.quad2d.validate();
    for (const auto& m : cfg.modes)
        if (!std::isfinite(m.amplitude) || !std::isfinite(m.phase))
            throw ConfigError("mode amplitudes must be finite");
    if (!cfg.initial_file.empty() && !std::ifstream(cfg.initial_file).good())
        throw ConfigError("initial.file not readable: " + cfg.initial_file);
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"stable_decay_1d",      "periodic_meanzero_decay_1d",
            "line_nonneg_decay_1d", "slope_bound_1d",
            "unstable_growth_1d",   "stable_decay_2d",
            "periodic_meanzero_decay_2d", "line_nonneg_decay_2d",
            "reduction_check",      "velocity_probe"};
}

RunConfig scenario_preset(const std::string& name) {
    RunConfig cfg;
    cfg.scenario = name;
    if (name == "stable_decay_1d") {
        cfg.n = 256;
        cfg.modes = {{1, 0.3, 0.0}};
        cfg.control.t_end = 5.0;
    } else if (name == "periodic_meanzero_decay_1d") {
        cfg.n = 256;
        cfg.modes = {{1, 0.1, 0.0}};
        cfg.control.t_end = 5.0;
    } else if (name == "line_nonneg_decay_1d") {
        cfg.kind = DomainKind::TruncatedLine;
        cfg.length = 80.0 * kPi;
        cfg.n = 4096;
        cfg.bump = BumpSpec{40.0 * kPi, 0.0, 3.0, std::exp(-1.0)};
        cfg.control.t_end = 10.0;
        cfg.sample_stride = 4;
    } else if (name == "slope_bound_1d") {
        cfg.n = 512;
        cfg.modes = {{1, 0.9, -kPi / 2.0}};  // 0.9 sin x
        cfg.control.t_end = 5.0;
        cfg.sample_stride = 20;
    } else if (name == "unstable_growth_1d") {
        cfg.rho1 = 2.0;
        cfg.rho2 = 1.0;
        cfg.n = 256;
        cfg.modes = {{1, 1e-3, 0.0}};
        cfg.control.t_end = 20.0;
    } else if (name == "stable_decay_2d" || name == "periodic_meanzero_decay_2d") {
        cfg.dimension = 2;
        cfg.n = 64;
        cfg.n2 = 64;
        // 0.2 cos x1 cos x2 as a two-mode sum
        cfg.modes2d = {{1, 1, 0.1, 0.0}, {1, -1, 0.1, 0.0}};
        cfg.control.t_end = 1.0;
    } else if (name == "line_nonneg_decay_2d") {
        cfg.dimension = 2;
        cfg.n = 96;
        cfg.n2 = 96;
        cfg.length = 16.0 * kPi;
        cfg.length2 = 16.0 * kPi;
        cfg.bump = BumpSpec{8.0 * kPi, 8.0 * kPi, 3.0, std::exp(-1.0)};
        cfg.control.t_end = 2.0;
        cfg.quad2d.allow_large_grid = true;
    } else if (name == "reduction_check") {
        cfg.n = 64;
        cfg.modes = {{1, 0.2, 0.0}};
        cfg.quad2d.image_layers = 2;
        cfg.control.t_end = 0.0;
    } else if (name == "velocity_probe") {
        cfg.dimension = 2;
        cfg.n = 64;
        cfg.n2 = 64;
        cfg.modes2d = {{1, 0, 0.1, 0.0}};
        cfg.control.t_end = 0.0;
    } else {
        throw ConfigError("unknown scenario '" + name + "'");
    }
    return cfg;
}

RunConfig parse_config(const std::string& text) {
    struct Pair {
        std::string key, value;
        int line;
    };
    std::vector<Pair> pairs;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string scenario;
    int scenario_line = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        Pair p{trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)), lineno};
        if (p.key.empty()) fail(lineno, "empty key");
        if (p.key == "scenario") {
            scenario = p.value;
            scenario_line = lineno;
        }
        pairs.push_back(std::move(p));
    }
    if (scenario.empty()) fail(0, "missing required key 'scenario'");

    RunConfig cfg;
    try {
        cfg = scenario_preset(scenario);
    } catch (const ConfigError& e) {
        fail(scenario_line, e.what());
    }
    ApplyState st;
    for (const auto& p : pairs) apply_key(cfg, p.key, p.value, p.line, st);
    validate_config(cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& pair) {
    const size_t eq = pair.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like key=value: '" + pair + "'");
    const std::string key = trim(pair.substr(0, eq));
    const std::string value = trim(pair.substr(eq + 1));
    if (key == "scenario") throw ConfigError("scenario cannot be overridden");
    ApplyState st;
    st.initial_replaced = false;
    apply_key(cfg, key, value, 0, st);
    validate_config(cfg);
}

namespace {

std::vector<double> read_samples(const std::string& path, size_t expected) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open initial.file: " + path);
    std::vector<double> vals;
    double x;
    while (in >> x) vals.push_back(x);
    if (vals.size() != expected)
        throw ConfigError("initial.file has " + std::to_string(vals.size()) +
                          " samples, expected " + std::to_string(expected));
    return vals;
}

}  // namespace

ScalarField1D build_initial_1d(const RunConfig& cfg) {
    if (cfg.dimension != 1) throw ConfigError("config is not one-dimensional");
    const GridSpec1D grid = make_grid(cfg.n, cfg.length, cfg.kind);
    ScalarField1D f = make_field(grid);
    if (!cfg.initial_file.empty()) {
        f.samples = read_samples(cfg.initial_file, static_cast<size_t>(grid.n));
    } else {
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.node(j);
            double v = 0.0;
            for (const auto& m : cfg.modes)
                v += m.amplitude * std::cos(m.k * x * (kTwoPi / grid.length) + m.phase);
            if (cfg.bump)
                v += cfg.bump->height * bump_profile((x - cfg.bump->center1) / cfg.bump->width);
            f[j] = v;
        }
    }
    validate_finite(f, "build_initial_1d");
    if (grid.kind == DomainKind::TruncatedLine) validate_line_decay(f);
    return f;
}

ScalarField2D build_initial_2d(const RunConfig& cfg) {
    if (cfg.dimension != 2) throw ConfigError("config is not two-dimensional");
    const GridSpec2D grid = make_grid_2d(cfg.n, cfg.n2 > 0 ? cfg.n2 : cfg.n, cfg.length,
                                         cfg.length2 > 0.0 ? cfg.length2 : cfg.length);
    ScalarField2D f = make_field(grid);
    if (!cfg.initial_file.empty()) {
        f.samples = read_samples(cfg.initial_file,
                                 static_cast<size_t>(grid.n1) * grid.n2);
    } else {
        const double lam1 = kTwoPi / grid.length1;
        const double lam2 = kTwoPi / grid.length2;
        for (int i1 = 0; i1 < grid.n1; ++i1) {
            const double x1 = i1 * grid.spacing1;
            for (int i2 = 0; i2 < grid.n2; ++i2) {
                const double x2 = i2 * grid.spacing2;
                double v = 0.0;
                for (const auto& m : cfg.modes2d)
                    v += m.amplitude *
                         std::cos(m.k1 * lam1 * x1 + m.k2 * lam2 * x2 + m.phase);
                if (cfg.bump) {
                    const double r = std::hypot(x1 - cfg.bump->center1,
                                                x2 - cfg.bump->center2);
                    v += cfg.bump->height * bump_profile(r / cfg.bump->width);
                }
                f.at(i1, i2) = v;
            }
        }
    }
    validate_finite(f, "build_initial_2d");
    return f;
}

}  // namespace muskat
