#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "muskat/muskat1d.hpp"
#include "muskat/timestepping.hpp"

using namespace muskat;

namespace {

const PhysParams kStable(1.0, 2.0);

ScalarField1D cosine_field(int n, double amp) {
    const GridSpec1D g = make_grid(n, kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f = make_field(g);
    for (int j = 0; j < g.n; ++j) f[j] = amp * std::cos(g.node(j));
    return f;
}

RhsFn<ScalarField1D> linear_rhs(const PhysParams& p) {
    return [p](const ScalarField1D& f) {
        ScalarField1D r = lambda_op(f);
        for (double& v : r.samples) v *= -p.rho_bar() / 2.0;
        return r;
    };
}

}  // namespace

TEST_CASE("automatic step size follows the linear stability bound") {
    StepControl ctrl;
    ctrl.t_end = 1.0;
    const double dt = ctrl.resolve_dt(0.1, 1.0);
    CHECK(dt == doctest::Approx(0.5 * 2.785 * 2.0 * 0.1 / std::numbers::pi));
    CHECK(ctrl.resolve_dt(0.1, 0.0) == doctest::Approx(1.0 / 1000000.0));
    ctrl.dt = -1.0;
    CHECK_THROWS_AS(ctrl.resolve_dt(0.1, 1.0), ConfigError);
}

TEST_CASE("a zero right-hand side leaves the state untouched") {
    const ScalarField1D f = cosine_field(64, 0.3);
    const RhsFn<ScalarField1D> rest = [](const ScalarField1D& u) {
        return make_field(u.grid);
    };
    const ScalarField1D out = step_rk4(f, rest, 0.1);
    for (int j = 0; j < f.grid.n; ++j) CHECK(out[j] == f[j]);
}

TEST_CASE("one RK4 step on the linear problem matches the multiplier to O(dt^5)") {
    const ScalarField1D f = cosine_field(64, 1.0);
    const double dt = 1e-3;
    const ScalarField1D stepped = step_rk4(f, linear_rhs(kStable), dt);
    const ScalarField1D exact = linear_evolve(f, dt, kStable);
    for (int j = 0; j < f.grid.n; ++j)
        CHECK(std::abs(stepped[j] - exact[j]) < 1e-14);
}

TEST_CASE("the integrating factor is exact on the pure linear problem") {
    const ScalarField1D f = cosine_field(64, 1.0);
    // remainder of the purely linear problem is identically zero
    const RhsFn<ScalarField1D> zero = [](const ScalarField1D& u) {
        return make_field(u.grid);
    };
    const ScalarField1D stepped = step_integrating_factor(f, zero, kStable, 0.7);
    const ScalarField1D exact = linear_evolve(f, 0.7, kStable);
    for (int j = 0; j < f.grid.n; ++j)
        CHECK(std::abs(stepped[j] - exact[j]) < 1e-12);
}

TEST_CASE("the integrating factor refuses windowed line grids") {
    const GridSpec1D g = make_grid(256, 8.0 * kTwoPi, DomainKind::TruncatedLine);
    const ScalarField1D f = make_field(g);
    const RhsFn<ScalarField1D> zero = [](const ScalarField1D& u) {
        return make_field(u.grid);
    };
    CHECK_THROWS_AS(step_integrating_factor(f, zero, kStable, 0.1), DomainViolation);
}

TEST_CASE("a NaN-producing right-hand side surfaces as an integration error") {
    const ScalarField1D f = cosine_field(64, 0.3);
    const RhsFn<ScalarField1D> poison = [](const ScalarField1D& u) {
        ScalarField1D r = make_field(u.grid);
        r[0] = std::nan("");
        return r;
    };
    CHECK_THROWS_AS(step_rk4(f, poison, 0.1), IntegrationError);
}

TEST_CASE("integration lands on t_end and records per stride") {
    const ScalarField1D f = cosine_field(64, 0.3);
    StepControl ctrl;
    ctrl.dt = 0.01;
    ctrl.t_end = 0.1;
    const Trajectory<ScalarField1D> traj =
        integrate(f, kStable, ctrl, linear_rhs(kStable));
    REQUIRE(!traj.times.empty());
    CHECK(traj.termination == Termination::Completed);
    CHECK(traj.times.back() == doctest::Approx(0.1));
    CHECK(traj.times.size() == 11);  // initial + 10 steps at stride 1
    CHECK(traj.records.size() == traj.states.size());

    const Trajectory<ScalarField1D> strided =
        integrate(f, kStable, ctrl, linear_rhs(kStable), Scheme::Rk4, 5);
    CHECK(strided.times.size() == 3);  // t = 0, 0.05, 0.1

    StepControl zero = ctrl;
    zero.t_end = 0.0;
    const Trajectory<ScalarField1D> still =
        integrate(f, kStable, zero, linear_rhs(kStable));
    CHECK(still.times.size() == 1);
    for (int j = 0; j < f.grid.n; ++j) CHECK(still.states[0][j] == f[j]);
}

TEST_CASE("the step limit terminates a run that cannot finish") {
    const ScalarField1D f = cosine_field(64, 0.3);
    StepControl ctrl;
    ctrl.dt = 1e-4;
    ctrl.t_end = 1.0;
    ctrl.max_steps = 10;
    const Trajectory<ScalarField1D> traj =
        integrate(f, kStable, ctrl, linear_rhs(kStable));
    CHECK(traj.termination == Termination::StepLimit);
}

TEST_CASE("the blowup guard trips on runaway slopes") {
    const ScalarField1D f = cosine_field(64, 0.3);
    // manufactured exponential steepening: f_t = 5 f
    const RhsFn<ScalarField1D> growth = [](const ScalarField1D& u) {
        ScalarField1D r = u;
        for (double& v : r.samples) v *= 5.0;
        return r;
    };
    StepControl ctrl;
    ctrl.dt = 0.05;
    ctrl.t_end = 10.0;
    ctrl.blowup_slope = 2.0;
    const Trajectory<ScalarField1D> traj = integrate(f, kStable, ctrl, growth);
    CHECK(traj.termination == Termination::BlowupGuard);
    CHECK(traj.records.back().max_slope > 2.0);
    CHECK(traj.times.back() < 10.0);
}

TEST_CASE("the grid mean is invariant along a nonlinear trajectory") {
    const ScalarField1D f = cosine_field(128, 0.3);
    StepControl ctrl;
    ctrl.t_end = 1.0;
    const RhsFn<ScalarField1D> rhs = [](const ScalarField1D& u) {
        return rhs_periodic(u, kStable);
    };
    const Trajectory<ScalarField1D> traj = integrate(f, kStable, ctrl, rhs);
    CHECK(traj.termination == Termination::Completed);
    for (const auto& rec : traj.records)
        CHECK(std::abs(rec.mean - traj.records.front().mean) < 1e-10);
}
