#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "muskat/diagnostics.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

// Negative-real-axis stability interval of classical RK4.
inline constexpr double kRk4StabilityInterval = 2.785;

struct StepControl {
    std::optional<double> dt;    // empty = Auto
    double cfl_safety = 0.5;
    double t_end = 0.0;
    long max_steps = 1000000;
    double blowup_slope = 10.0;

    // Explicit-RK4 bound against the stiffest linear mode |xi| = pi/spacing.
    double resolve_dt(double spacing, double rho_bar) const {
        if (dt) {
            if (*dt <= 0.0) throw ConfigError("dt must be positive");
            return *dt;
        }
        if (rho_bar == 0.0) return t_end / static_cast<double>(std::max(1L, max_steps));
        return cfl_safety * kRk4StabilityInterval * 2.0 * spacing /
               (std::numbers::pi * std::abs(rho_bar));
    }
};

enum class Termination { Completed, BlowupGuard, StepLimit };
enum class Scheme { Rk4, IntegratingFactor };

template <class Field>
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
    std::vector<TimeSeriesRecord> records;
    Termination termination = Termination::Completed;
};

namespace detail {

inline void axpy(ScalarField1D& y, double a, const ScalarField1D& x) {
    for (size_t i = 0; i < y.samples.size(); ++i) y.samples[i] += a * x.samples[i];
}
inline void axpy(ScalarField2D& y, double a, const ScalarField2D& x) {
    for (size_t i = 0; i < y.samples.size(); ++i) y.samples[i] += a * x.samples[i];
}

template <class Field>
Field combine(const Field& base, double a, const Field& x) {
    Field out = base;
    axpy(out, a, x);
    return out;
}

template <class Field>
bool finite(const Field& f) {
    for (double v : f.samples)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace detail

template <class Field>
using RhsFn = std::function<Field(const Field&)>;

// Classical fourth-order Runge-Kutta update.
template <class Field>
Field step_rk4(const Field& state, const RhsFn<Field>& rhs, double dt) {
    if (dt <= 0.0) throw ConfigError("step_rk4: dt must be positive");
    const Field k1 = rhs(state);
    const Field k2 = rhs(detail::combine(state, dt / 2.0, k1));
    const Field k3 = rhs(detail::combine(state, dt / 2.0, k2));
    const Field k4 = rhs(detail::combine(state, dt, k3));

    Field out = state;
    detail::axpy(out, dt / 6.0, k1);
    detail::axpy(out, dt / 3.0, k2);
    detail::axpy(out, dt / 3.0, k3);
    detail::axpy(out, dt / 6.0, k4);
    const char* stage = nullptr;
    if (!detail::finite(k1)) stage = "stage 1";
    else if (!detail::finite(k2)) stage = "stage 2";
    else if (!detail::finite(k3)) stage = "stage 3";
    else if (!detail::finite(k4)) stage = "stage 4";
    else if (!detail::finite(out)) stage = "update";
    if (stage)
        throw IntegrationError(std::string("step_rk4 produced NaN at ") + stage, 0.0, 0);
    return out;
}

// Lawson integrating-factor RK4: the linear part -(rho_bar/2) Lambda is
// advanced exactly by its Fourier multiplier, the remainder explicitly.
// `remainder` must evaluate rhs(f) + (rho_bar/2) Lambda f.
template <class Field>
Field step_integrating_factor(const Field& state, const RhsFn<Field>& remainder,
                              const PhysParams& p, double dt) {
    if (dt <= 0.0) throw ConfigError("step_integrating_factor: dt must be positive");
    if constexpr (std::is_same_v<Field, ScalarField1D>) {
        if (state.grid.kind == DomainKind::TruncatedLine)
            throw DomainViolation(
                "integrating-factor scheme unsupported on TruncatedLine grids");
    }
    const auto prop = [&](const Field& f, double tau) { return linear_evolve(f, tau, p); };

    const Field s1 = remainder(state);
    const Field half = prop(state, dt / 2.0);
    const Field s2 = remainder(detail::combine(half, dt / 2.0, prop(s1, dt / 2.0)));
    const Field s3 = remainder(detail::combine(half, dt / 2.0, s2));
    const Field s4 =
        remainder(detail::combine(prop(state, dt), dt, prop(s3, dt / 2.0)));

    Field out = prop(state, dt);
    detail::axpy(out, dt / 6.0, prop(s1, dt));
    detail::axpy(out, dt / 3.0, prop(s2, dt / 2.0));
    detail::axpy(out, dt / 3.0, prop(s3, dt / 2.0));
    detail::axpy(out, dt / 6.0, s4);
    if (!detail::finite(out))
        throw IntegrationError("integrating-factor step produced NaN", 0.0, 0);
    return out;
}

template <class Field>
using ObserverFn = std::function<void(const Field&, double, const TimeSeriesRecord&)>;

// Advances f0 to t_end (or until max_steps / blowup guard). The final step is
// shortened to land on t_end exactly. States and records are stored every
// `record_stride` steps plus the final state.
template <class Field>
Trajectory<Field> integrate(const Field& f0, const PhysParams& p,
                            const StepControl& control, const RhsFn<Field>& rhs,
                            Scheme scheme = Scheme::Rk4, int record_stride = 1,
                            const ObserverFn<Field>& observer = nullptr) {
    validate_finite(f0, "integrate");
    if (control.t_end < 0.0) throw ConfigError("t_end must be >= 0");
    if (record_stride < 1) throw ConfigError("record_stride must be >= 1");

    double spacing;
    if constexpr (std::is_same_v<Field, ScalarField1D>)
        spacing = f0.grid.spacing;
    else
        spacing = std::min(f0.grid.spacing1, f0.grid.spacing2);
    const double dt = control.resolve_dt(spacing, p.rho_bar());

    // For the integrating factor route the caller-supplied rhs is the full
    // right-hand side; the linear part is peeled off here.
    RhsFn<Field> remainder;
    if (scheme == Scheme::IntegratingFactor) {
        const double rb = p.rho_bar();
        remainder = [rhs, rb](const Field& f) {
            Field r = rhs(f);
            if (rb != 0.0) detail::axpy(r, rb / 2.0, lambda_op(f));
            return r;
        };
    }

    Trajectory<Field> traj;
    Field state = f0;
    double t = 0.0;
    long step = 0;

    const auto record_state = [&](const TimeSeriesRecord& rec) {
        traj.times.push_back(t);
        traj.states.push_back(state);
        traj.records.push_back(rec);
    };

    TimeSeriesRecord rec = observe(state, t);
    record_state(rec);
    if (observer) observer(state, t, rec);

    while (t < control.t_end) {
        if (step >= control.max_steps) {
            traj.termination = Termination::StepLimit;
            return traj;
        }
        const double h = std::min(dt, control.t_end - t);
        try {
            if (scheme == Scheme::Rk4)
                state = step_rk4(state, rhs, h);
            else
                state = step_integrating_factor(state, remainder, p, h);
        } catch (const IntegrationError& e) {
            throw IntegrationError(e.what(), t, step);
        }
        t += h;
        if (control.t_end - t < dt * 1e-12) t = control.t_end;
        ++step;

        rec = observe(state, t);
        if (observer) observer(state, t, rec);
        const bool blown = rec.max_slope > control.blowup_slope;
        if (step % record_stride == 0 || t >= control.t_end || blown) record_state(rec);
        if (blown) {
            traj.termination = Termination::BlowupGuard;
            return traj;
        }
    }
    traj.termination = Termination::Completed;
    return traj;
}

}  // namespace muskat
