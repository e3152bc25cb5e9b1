#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "muskat/spectral.hpp"

using namespace muskat;

namespace {

ScalarField1D sampled(const GridSpec1D& g, double (*fn)(double)) {
    ScalarField1D f = make_field(g);
    for (int j = 0; j < g.n; ++j) f[j] = fn(g.node(j));
    return f;
}

}  // namespace

TEST_CASE("grid construction validates its inputs") {
    CHECK_THROWS_AS(make_grid(257, kTwoPi, DomainKind::PeriodicTorus), ConfigError);
    CHECK_THROWS_AS(make_grid(4, kTwoPi, DomainKind::PeriodicTorus), ConfigError);
    CHECK_THROWS_AS(make_grid(256, -1.0, DomainKind::PeriodicTorus), ConfigError);
    CHECK_THROWS_AS(make_grid(256, kTwoPi, DomainKind::TruncatedLine), ConfigError);

    const GridSpec1D g = make_grid(256, kTwoPi, DomainKind::PeriodicTorus);
    CHECK(g.spacing == doctest::Approx(kTwoPi / 256));
    CHECK(g.wrap(-1) == 255);
    CHECK(g.wrap(256) == 0);
}

TEST_CASE("density parameters define the regime") {
    CHECK(PhysParams(1.0, 2.0).regime() == Regime::Stable);
    CHECK(PhysParams(2.0, 1.0).regime() == Regime::Unstable);
    CHECK(PhysParams(1.0, 1.0).regime() == Regime::Degenerate);
    CHECK(PhysParams(1.0, 2.0).rho_bar() == doctest::Approx(1.0));
    CHECK_THROWS_AS(PhysParams(-1.0, 2.0), ConfigError);
}

TEST_CASE("line fields must decay near the box boundary") {
    const GridSpec1D g = make_grid(512, 16.0 * kTwoPi, DomainKind::TruncatedLine);
    ScalarField1D ok = make_field(g);
    for (int j = 0; j < g.n; ++j) {
        const double u = (g.node(j) - g.length / 2.0) / 3.0;
        ok[j] = u * u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
    }
    CHECK_NOTHROW(validate_line_decay(ok));

    ScalarField1D bad = ok;
    bad[0] = 0.5;
    CHECK_THROWS_AS(validate_line_decay(bad), DomainViolation);
}

TEST_CASE("spectral derivative is exact on trigonometric data") {
    const GridSpec1D g = make_grid(128, kTwoPi, DomainKind::PeriodicTorus);
    const ScalarField1D f = sampled(g, [](double x) { return std::sin(3.0 * x); });
    const ScalarField1D fx = derivative(f, 1);
    const ScalarField1D fxx = derivative(f, 2);
    for (int j = 0; j < g.n; ++j) {
        CHECK(std::abs(fx[j] - 3.0 * std::cos(3.0 * g.node(j))) < 1e-11);
        CHECK(std::abs(fxx[j] + 9.0 * std::sin(3.0 * g.node(j))) < 1e-11);
    }
}

TEST_CASE("derivative respects non-unit period") {
    const GridSpec1D g = make_grid(128, 4.0 * kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f = make_field(g);
    const double lam = kTwoPi / g.length;
    for (int j = 0; j < g.n; ++j) f[j] = std::cos(2.0 * lam * g.node(j));
    const ScalarField1D fx = derivative(f, 1);
    for (int j = 0; j < g.n; ++j)
        CHECK(fx[j] ==
              doctest::Approx(-2.0 * lam * std::sin(2.0 * lam * g.node(j))).epsilon(1e-12));
}

TEST_CASE("half Laplacian multiplies mode k by |k|") {
    const GridSpec1D g = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    const ScalarField1D f =
        sampled(g, [](double x) { return std::cos(x) + 0.5 * std::cos(4.0 * x); });
    const ScalarField1D lf = lambda_op(f);
    for (int j = 0; j < g.n; ++j)
        CHECK(lf[j] == doctest::Approx(std::cos(g.node(j)) +
                                       2.0 * std::cos(4.0 * g.node(j)))
                           .epsilon(1e-12));
}

TEST_CASE("linear evolution applies the dissipative multiplier") {
    const GridSpec1D g = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    const ScalarField1D f = sampled(g, [](double x) { return 0.1 * std::cos(2.0 * x); });
    const PhysParams p(1.0, 2.0);
    const ScalarField1D evolved = linear_evolve(f, 3.0, p);
    // mode k = 2 decays at rate rho_bar * k / 2 = 1
    for (int j = 0; j < g.n; ++j)
        CHECK(evolved[j] == doctest::Approx(std::exp(-3.0) * f[j]).epsilon(1e-12));
}

TEST_CASE("doubling resample interpolates band-limited data exactly") {
    const GridSpec1D g = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    const ScalarField1D f =
        sampled(g, [](double x) { return 0.3 * std::cos(x) + 0.2 * std::sin(5.0 * x); });
    const ScalarField1D d = resample_double(f);
    REQUIRE(d.grid.n == 128);
    for (int j = 0; j < d.grid.n; ++j) {
        const double x = d.grid.node(j);
        CHECK(d[j] ==
              doctest::Approx(0.3 * std::cos(x) + 0.2 * std::sin(5.0 * x)).epsilon(1e-12));
    }
}

TEST_CASE("norms report the standard quantities") {
    const GridSpec1D g = make_grid(256, kTwoPi, DomainKind::PeriodicTorus);
    const ScalarField1D f = sampled(g, [](double x) { return 0.1 + 0.2 * std::cos(x); });
    const FieldNorms nm = norms(f);
    CHECK(nm.max == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(nm.min == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(nm.linf == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(nm.mean == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(nm.max_slope == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("transform round trip is lossless") {
    const GridSpec1D g = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f = make_field(g);
    for (int j = 0; j < g.n; ++j) f[j] = std::sin(0.7 * j) * std::cos(1.3 * j * j);
    const ScalarField1D back = inverse_transform(transform(f));
    for (int j = 0; j < g.n; ++j)
        CHECK(back[j] == doctest::Approx(f[j]).epsilon(1e-13));

    const Spectrum1D s = transform(sampled(g, [](double x) { return 0.5 * std::cos(2.0 * x); }));
    CHECK(std::abs(s.amplitude(2)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(s.amplitude(-2) - std::conj(s.amplitude(2))) < 1e-15);
}

TEST_CASE("2-D Riesz transforms compose with gradients into the half Laplacian") {
    const GridSpec2D g = make_grid_2d(32, 32, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(g);
    for (int i1 = 0; i1 < 32; ++i1)
        for (int i2 = 0; i2 < 32; ++i2)
            f.at(i1, i2) = 0.2 * std::cos(i1 * g.spacing1) * std::cos(i2 * g.spacing2) +
                           0.1 * std::cos(2.0 * i1 * g.spacing1 + i2 * g.spacing2);
    const ScalarField2D lhs = lambda_op(f);
    const ScalarField2D r1 = riesz(derivative(f, 0, 1), 0);
    const ScalarField2D r2 = riesz(derivative(f, 1, 1), 1);
    for (size_t i = 0; i < lhs.samples.size(); ++i)
        CHECK(lhs.samples[i] ==
              doctest::Approx(r1.samples[i] + r2.samples[i]).epsilon(1e-11));
}

TEST_CASE("non-finite samples are rejected everywhere") {
    const GridSpec1D g = make_grid(64, kTwoPi, DomainKind::PeriodicTorus);
    ScalarField1D f = make_field(g);
    f[10] = std::nan("");
    CHECK_THROWS_AS(validate_finite(f, "test"), DomainViolation);
    CHECK_THROWS_AS(derivative(f, 1), DomainViolation);
}
