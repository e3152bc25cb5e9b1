#include "muskat/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace muskat {

namespace {

RhsFn<ScalarField1D> make_rhs_1d(const RunConfig& cfg, const PhysParams& p) {
    const Quadrature1DConfig quad = cfg.quad1d;
    if (cfg.kind == DomainKind::TruncatedLine)
        return [p, quad](const ScalarField1D& f) { return rhs_line(f, p, quad); };
    return [p, quad](const ScalarField1D& f) { return rhs_periodic(f, p, quad); };
}

RhsFn<ScalarField2D> make_rhs_2d(const RunConfig& cfg, const PhysParams& p) {
    const Quadrature2DConfig quad = cfg.quad2d;
    return [p, quad](const ScalarField2D& f) { return rhs_2d(f, p, quad); };
}

template <class Field>
void write_csv_stream(const Trajectory<Field>& traj, std::ostream& out) {
    out.precision(17);
    out << "t,linf,l1,mean,fmax,fmin,max_slope,argmax_index,spectrum_tail\n";
    for (const auto& r : traj.records)
        out << r.t << ',' << r.linf << ',' << r.l1 << ',' << r.mean << ','
            << r.fmax << ',' << r.fmin << ',' << r.max_slope << ','
            << r.argmax_index << ',' << r.spectrum_tail << '\n';
}

Verdict verdict_from_bool(const std::string& name, bool pass, double measured,
                          double bound, double tol, const std::string& notes = "") {
    Verdict v;
    v.check_name = name;
    v.pass = pass;
    v.measured = measured;
    v.bound = bound;
    v.tolerance = tol;
    v.notes = notes;
    return v;
}

Verdict l1_drift_verdict(std::span<const TimeSeriesRecord> series, double tol) {
    double drift = 0.0;
    for (const auto& r : series) drift = std::max(drift, std::abs(r.l1 - series.front().l1));
    return verdict_from_bool("l1_conservation", drift <= tol, drift, 0.0, tol);
}

// Most negative N2 violation at the signed argmax of the slope, over the
// stored states of a slope-bounded run.
Verdict slope_generator_verdict(const Trajectory<ScalarField1D>& traj,
                                const PhysParams& p, const Quadrature1DConfig& quad) {
    double worst = -1e300;
    for (const auto& state : traj.states) {
        const ScalarField1D fx = derivative(state, 1);
        int arg = 0;
        for (int j = 1; j < fx.grid.n; ++j)
            if (fx[j] > fx[arg]) arg = j;
        const SlopeDecomposition dec = slope_rhs(state, p, quad);
        worst = std::max(worst, dec.n2[arg]);
    }
    const double tol = 1e-6;
    return verdict_from_bool("slope_generator_sign", worst <= tol, worst, 0.0, tol);
}

Verdict growth_rate_verdict(std::span<const double> times,
                            std::span<const double> amplitudes) {
    const DecayFit fit = fit_series(times, amplitudes, DecayModel::Exponential);
    const double rate = -fit.value;  // growth shows up as negative decay
    const bool pass = std::abs(rate - 0.5) <= 0.05 * 0.5;
    std::ostringstream notes;
    notes.precision(15);
    notes << "fit quality " << fit.quality;
    return verdict_from_bool("mode_growth_rate", pass, rate, 0.5, 0.05, notes.str());
}

struct OutputPaths {
    std::string series;
    std::string report;
};

OutputPaths prepare_output(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    OutputPaths paths;
    paths.series = cfg.output_dir + "/" + cfg.scenario + "_series.csv";
    paths.report = cfg.output_dir + "/" + cfg.scenario + "_report.txt";
    return paths;
}

void write_report(const std::vector<Verdict>& verdicts, const std::string& path,
                  std::ostream& log) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write report: " + path);
    for (const auto& v : verdicts) {
        out << format_verdict(v) << '\n';
        log << format_verdict(v) << '\n';
    }
}

ScenarioResult run_reduction_check(const RunConfig& cfg, std::ostream& log) {
    const PhysParams p(cfg.rho1, cfg.rho2);
    const ScalarField1D f = build_initial_1d(cfg);
    const ReductionReport rep = reduce_consistency(f, p, cfg.quad2d, cfg.quad1d);

    ScenarioResult result;
    result.verdicts.push_back(verdict_from_bool("reduction_gap", rep.l_inf_gap < 1e-2,
                                                rep.l_inf_gap, 1e-2, 0.0));
    const OutputPaths paths = prepare_output(cfg);
    result.report_path = paths.report;
    write_report(result.verdicts, paths.report, log);
    return result;
}

ScenarioResult run_velocity_probe(const RunConfig& cfg, std::ostream& log) {
    const PhysParams p(cfg.rho1, cfg.rho2);
    const ScalarField2D f = build_initial_2d(cfg);
    const double h = std::max(f.grid.spacing1, f.grid.spacing2);

    int arg = 0;
    for (size_t i = 1; i < f.samples.size(); ++i)
        if (f.samples[i] > f.samples[arg]) arg = static_cast<int>(i);
    const int a1 = arg / f.grid.n2;
    const int a2 = arg % f.grid.n2;
    const double x1 = a1 * f.grid.spacing1;
    const double x2 = a2 * f.grid.spacing2;
    const double peak = f.samples[arg];

    std::vector<std::array<double, 3>> points = {
        {x1, x2, peak + 1.5 * h}, {0.0, 0.0, 2.0}, {0.0, 0.0, 4.0}, {0.0, 0.0, 8.0}};
    const auto samples = velocity_field(f, p, points, cfg.quad2d);
    const ScalarField2D ft = rhs_2d(f, p, cfg.quad2d);

    auto speed = [](const VelocitySample& s) {
        return std::sqrt(s.velocity[0] * s.velocity[0] +
                         s.velocity[1] * s.velocity[1] +
                         s.velocity[2] * s.velocity[2]);
    };

    ScenarioResult result;
    const double reference = ft.samples[arg];
    const double rel = std::abs(samples[0].velocity[2] - reference) /
                       std::max(std::abs(reference), 1e-300);
    result.verdicts.push_back(
        verdict_from_bool("velocity_extremum_match", rel <= 5e-2, rel, 5e-2, 0.0));
    const bool decays = speed(samples[1]) > speed(samples[2]) &&
                        speed(samples[2]) > speed(samples[3]);
    result.verdicts.push_back(verdict_from_bool(
        "velocity_far_field_decay", decays, speed(samples[3]), speed(samples[1]), 0.0));

    const OutputPaths paths = prepare_output(cfg);
    result.report_path = paths.report;
    write_report(result.verdicts, paths.report, log);
    return result;
}

}  // namespace

template <class Field>
void emit_csv(const Trajectory<Field>& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write CSV: " + path);
    write_csv_stream(traj, out);
}

template void emit_csv<ScalarField1D>(const Trajectory<ScalarField1D>&,
                                      const std::string&);
template void emit_csv<ScalarField2D>(const Trajectory<ScalarField2D>&,
                                      const std::string&);

ScenarioResult run_scenario(const RunConfig& cfg, std::ostream& log) {
    if (cfg.scenario == "reduction_check") return run_reduction_check(cfg, log);
    if (cfg.scenario == "velocity_probe") return run_velocity_probe(cfg, log);

    const PhysParams p(cfg.rho1, cfg.rho2);
    ScenarioResult result;
    const OutputPaths paths = prepare_output(cfg);
    result.series_path = paths.series;
    result.report_path = paths.report;

    if (cfg.dimension == 1) {
        const ScalarField1D f0 = build_initial_1d(cfg);

        // The unstable scenario tracks the first-mode amplitude every step
        // while the state is still in the linear range.
        std::vector<double> mode_times, mode_amps;
        ObserverFn<ScalarField1D> observer = nullptr;
        if (cfg.scenario == "unstable_growth_1d") {
            observer = [&](const ScalarField1D& f, double t,
                           const TimeSeriesRecord& rec) {
                if (rec.linf < 1e-2) {
                    mode_times.push_back(t);
                    mode_amps.push_back(2.0 * std::abs(transform(f).modes[1]));
                }
            };
        }

        const Trajectory<ScalarField1D> traj =
            integrate(f0, p, cfg.control, make_rhs_1d(cfg, p), cfg.scheme,
                      cfg.sample_stride, observer);
        emit_csv(traj, paths.series);
        std::span<const TimeSeriesRecord> series{traj.records};

        if (cfg.scenario == "stable_decay_1d") {
            result.verdicts.push_back(check_max_principle(series));
        } else if (cfg.scenario == "periodic_meanzero_decay_1d") {
            const BoundConstants bc = BoundConstants::compute(
                series.front().linf, series.front().l1, p.rho_bar());
            result.verdicts.push_back(check_max_principle(series));
            result.verdicts.push_back(
                check_exponential_bound(series, bc, ExpBoundKind::Prop3_2));
            const DecayFit fit = fit_decay(series, DecayModel::Exponential);
            result.verdicts.push_back(verdict_from_bool(
                "fitted_decay_rate", fit.value >= 0.45, fit.value, 0.45, 0.0));
        } else if (cfg.scenario == "line_nonneg_decay_1d") {
            const BoundConstants bc = BoundConstants::compute(
                series.front().linf, series.front().l1, p.rho_bar());
            result.verdicts.push_back(
                check_algebraic_bound(series, bc, AlgBoundKind::Prop3_3));
            result.verdicts.push_back(l1_drift_verdict(series, 1e-5));
        } else if (cfg.scenario == "slope_bound_1d") {
            result.verdicts.push_back(check_slope_bound(series));
            result.verdicts.push_back(slope_generator_verdict(traj, p, cfg.quad1d));
        } else if (cfg.scenario == "unstable_growth_1d") {
            result.verdicts.push_back(growth_rate_verdict(mode_times, mode_amps));
            result.verdicts.push_back(verdict_from_bool(
                "blowup_guard", traj.termination == Termination::BlowupGuard,
                traj.records.back().t, cfg.control.t_end, 0.0));
        } else {
            result.verdicts.push_back(check_max_principle(series));
        }
    } else {
        const ScalarField2D f0 = build_initial_2d(cfg);
        const Trajectory<ScalarField2D> traj = integrate(
            f0, p, cfg.control, make_rhs_2d(cfg, p), cfg.scheme, cfg.sample_stride);
        emit_csv(traj, paths.series);
        std::span<const TimeSeriesRecord> series{traj.records};

        if (cfg.scenario == "periodic_meanzero_decay_2d") {
            const BoundConstants bc = BoundConstants::compute(
                series.front().linf, series.front().l1, p.rho_bar());
            result.verdicts.push_back(check_max_principle(series, 1e-6));
            result.verdicts.push_back(
                check_exponential_bound(series, bc, ExpBoundKind::Prop4_2, 0.05));
        } else if (cfg.scenario == "line_nonneg_decay_2d") {
            const BoundConstants bc = BoundConstants::compute(
                series.front().linf, series.front().l1, p.rho_bar());
            result.verdicts.push_back(
                check_algebraic_bound(series, bc, AlgBoundKind::Prop4_3, 0.1));
        } else {
            result.verdicts.push_back(check_max_principle(series, 1e-6));
        }
    }

    write_report(result.verdicts, paths.report, log);
    return result;
}

int run_probe(const RunConfig& cfg, const std::string& points_path, std::ostream& out,
              std::ostream& log) {
    if (cfg.dimension != 2) {
        log << "probe requires a two-dimensional config\n";
        return 2;
    }
    std::ifstream in(points_path);
    if (!in) {
        log << "cannot open points file: " << points_path << '\n';
        return 2;
    }
    std::vector<std::array<double, 3>> points;
    double x1, x2, x3;
    while (in >> x1 >> x2 >> x3) points.push_back({x1, x2, x3});

    const PhysParams p(cfg.rho1, cfg.rho2);
    const ScalarField2D f = build_initial_2d(cfg);
    try {
        const auto samples = velocity_field(f, p, points, cfg.quad2d);
        out.precision(17);
        for (const auto& s : samples)
            out << s.position[0] << ' ' << s.position[1] << ' ' << s.position[2]
                << ' ' << s.velocity[0] << ' ' << s.velocity[1] << ' '
                << s.velocity[2] << '\n';
    } catch (const PreconditionError& e) {
        log << "probe failed: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

double measure_convergence_order(const RunConfig& cfg, std::ostream& log) {
    if (cfg.dimension != 1)
        throw ConfigError("convergence measurement is one-dimensional");
    const PhysParams p(cfg.rho1, cfg.rho2);
    const ScalarField1D f0 = build_initial_1d(cfg);
    const RhsFn<ScalarField1D> rhs = make_rhs_1d(cfg, p);

    const double t_end = std::min(cfg.control.t_end > 0.0 ? cfg.control.t_end : 0.1, 0.5);
    // A base step that divides t_end evenly, so dt-halving compares equal
    // step sequences.
    const double stable_dt = cfg.control.resolve_dt(f0.grid.spacing, p.rho_bar());
    const double base_dt = t_end / std::ceil(t_end / stable_dt);

    auto advance = [&](double dt) {
        StepControl ctrl = cfg.control;
        ctrl.dt = dt;
        ctrl.t_end = t_end;
        return integrate(f0, p, ctrl, rhs, cfg.scheme, 1 << 28).states.back();
    };
    const ScalarField1D coarse = advance(base_dt);
    const ScalarField1D mid = advance(base_dt / 2.0);
    const ScalarField1D fine = advance(base_dt / 4.0);

    double e1 = 0.0, e2 = 0.0;
    for (int j = 0; j < f0.grid.n; ++j) {
        e1 = std::max(e1, std::abs(coarse[j] - mid[j]));
        e2 = std::max(e2, std::abs(mid[j] - fine[j]));
    }
    if (e2 <= 0.0) throw IntegrationError("convergence differences vanished", t_end, 0);
    const double order = std::log2(e1 / e2);
    log.precision(15);
    log << "dt=" << base_dt << " t_end=" << t_end << " e(dt,dt/2)=" << e1
        << " e(dt/2,dt/4)=" << e2 << " order=" << order << '\n';
    return order;
}

}  // namespace muskat
