#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "muskat/muskat2d.hpp"
#include "muskat/summation.hpp"

using namespace muskat;

namespace {

const PhysParams kStable(1.0, 2.0);

ScalarField2D product_mode(int n, double amp) {
    const GridSpec2D g = make_grid_2d(n, n, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(g);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            f.at(i1, i2) = amp * std::cos(i1 * g.spacing1) * std::cos(i2 * g.spacing2);
    return f;
}

}  // namespace

TEST_CASE("zero and constant interfaces are stationary") {
    const GridSpec2D g = make_grid_2d(32, 32, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(g);
    ScalarField2D r = rhs_2d(f, kStable);
    for (double v : r.samples) CHECK(v == 0.0);

    for (double& v : f.samples) v = 2.5;
    r = rhs_2d(f, kStable);
    for (double v : r.samples) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("small amplitudes reproduce the 2-D dispersion relation") {
    const int n = 32;
    const GridSpec2D g = make_grid_2d(n, n, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(g);
    const double eps = 1e-5;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            f.at(i1, i2) = eps * std::cos(i1 * g.spacing1 + i2 * g.spacing2);
    Quadrature2DConfig cfg;
    cfg.singular_rule = SingularRule2D::PolarPatch;
    cfg.image_layers = 2;
    const ScalarField2D r = rhs_2d(f, kStable, cfg);
    const double mult = -0.5 * std::sqrt(2.0);
    double worst = 0.0;
    for (size_t i = 0; i < r.samples.size(); ++i)
        worst = std::max(worst, std::abs(r.samples[i] - mult * f.samples[i]));
    CHECK(worst / (std::abs(mult) * eps) < 3e-2);
}

TEST_CASE("axis swap commutes with the right-hand side") {
    const int n = 32;
    const GridSpec2D g = make_grid_2d(n, n, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(g);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            f.at(i1, i2) = 0.2 * std::cos(i1 * g.spacing1) +
                           0.1 * std::sin(2.0 * i2 * g.spacing2);
    ScalarField2D swapped = make_field(g);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) swapped.at(i1, i2) = f.at(i2, i1);

    const ScalarField2D r = rhs_2d(f, kStable);
    const ScalarField2D rs = rhs_2d(swapped, kStable);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            CHECK(rs.at(i1, i2) == doctest::Approx(r.at(i2, i1)).epsilon(1e-10));
}

TEST_CASE("the discrete 2-D right-hand side conserves the mean") {
    const ScalarField2D f = product_mode(32, 0.2);
    const ScalarField2D r = rhs_2d(f, kStable);
    KahanSum mean;
    for (double v : r.samples) mean.add(v);
    CHECK(std::abs(mean.value() / static_cast<double>(r.samples.size())) < 1e-13);
}

TEST_CASE("large grids require an explicit opt-in") {
    const GridSpec2D g = make_grid_2d(128, 128, kTwoPi, kTwoPi);
    const ScalarField2D f = make_field(g);
    CHECK_THROWS_AS(rhs_2d(f, kStable), ConfigError);
}

TEST_CASE("a field constant in the second axis reduces to the 1-D dynamics") {
    const GridSpec1D g = make_grid(32, kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f = make_field(g);
    for (int j = 0; j < g.n; ++j) f[j] = 0.2 * std::cos(g.node(j));
    Quadrature2DConfig cfg;
    cfg.image_layers = 2;
    const ReductionReport report = reduce_consistency(f, kStable, cfg);
    CHECK(report.l_inf_gap < 5e-2);

    // the gap is discretization-dominated, so refining the grid shrinks it
    const GridSpec1D g2 = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f2 = make_field(g2);
    for (int j = 0; j < g2.n; ++j) f2[j] = 0.2 * std::cos(g2.node(j));
    const ReductionReport finer = reduce_consistency(f2, kStable, cfg);
    CHECK(finer.l_inf_gap < 0.5 * report.l_inf_gap);
}

TEST_CASE("velocity of a flat interface vanishes off the interface") {
    const GridSpec2D g = make_grid_2d(32, 32, kTwoPi, kTwoPi);
    const ScalarField2D f = make_field(g);
    // node-aligned probes: the quadrature window is then symmetric and the
    // odd integrand cancels exactly
    const auto samples = velocity_field(
        f, kStable, {{2.0 * g.spacing1, 5.0 * g.spacing2, 1.0}, {0.0, 0.0, -2.0}});
    for (const auto& s : samples) {
        CHECK(std::abs(s.velocity[0]) < 1e-12);
        CHECK(std::abs(s.velocity[1]) < 1e-12);
        CHECK(std::abs(s.velocity[2]) < 1e-12);
    }
}

TEST_CASE("velocity rejects on-interface query points") {
    const ScalarField2D f = product_mode(32, 0.1);
    CHECK_THROWS_AS(velocity_field(f, kStable, {{0.0, 0.0, 0.1}}), PreconditionError);
}

TEST_CASE("velocity magnitude decays away from the interface") {
    const int n = 32;
    const GridSpec2D g = make_grid_2d(n, n, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(g);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) f.at(i1, i2) = 0.1 * std::cos(i1 * g.spacing1);
    const auto samples =
        velocity_field(f, kStable, {{0.0, 0.0, 2.0}, {0.0, 0.0, 4.0}, {0.0, 0.0, 8.0}});
    auto speed = [](const VelocitySample& s) {
        return std::sqrt(s.velocity[0] * s.velocity[0] + s.velocity[1] * s.velocity[1] +
                         s.velocity[2] * s.velocity[2]);
    };
    CHECK(speed(samples[0]) > speed(samples[1]));
    CHECK(speed(samples[1]) > speed(samples[2]));
}

TEST_CASE("the 2-D extremum integral is nonpositive and matches the full rhs") {
    // break the product mode's two-way symmetry so the maximum is unique
    ScalarField2D f = product_mode(32, 0.2);
    for (int i1 = 0; i1 < 32; ++i1)
        for (int i2 = 0; i2 < 32; ++i2)
            f.at(i1, i2) += 0.05 * std::cos(i1 * f.grid.spacing1);
    const ExtremumRhs ext = rhs_2d_at_extremum(f, kStable);
    const ScalarField2D r = rhs_2d(f, kStable);
    CHECK(!ext.tie);
    CHECK(ext.value <= 1e-12);
    CHECK(ext.value ==
          doctest::Approx(r.samples[ext.index]).epsilon(5e-2));

    ScalarField2D flat = make_field(f.grid);
    for (double& v : flat.samples) v = 1.0;
    const ExtremumRhs tie = rhs_2d_at_extremum(flat, kStable);
    CHECK(tie.tie);
    CHECK(std::abs(tie.value) < 1e-14);
}
