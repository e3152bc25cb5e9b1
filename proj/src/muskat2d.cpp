#include "muskat/muskat2d.hpp"

#include <algorithm>
#include <cmath>

#include "muskat/summation.hpp"

namespace muskat {

namespace {

constexpr double kPi = kTwoPi / 2.0;

void check_cost(const GridSpec2D& grid, const Quadrature2DConfig& cfg) {
    cfg.validate();
    if (!cfg.allow_large_grid && (grid.n1 > 96 || grid.n2 > 96))
        throw ConfigError("2-D quadrature above 96x96 needs allow_large_grid");
}

// Half-width of the symmetric offset window covering the centered cell and
// image_layers shells of periodic images along one axis. The two edge
// offsets carry trapezoid weight 1/2 so the window spans whole periods;
// incomplete periods break the zero-mean cancellation of the far field and
// leave an O(1/R) truncation floor.
int window_halfwidth(int n, int layers) { return ((2 * layers + 1) * n) / 2; }

double edge_weight(int j, int k_edge) { return std::abs(j) == k_edge ? 0.5 : 1.0; }

}  // namespace

ScalarField2D rhs_2d(const ScalarField2D& f, const PhysParams& p,
                     const Quadrature2DConfig& cfg) {
    validate_finite(f, "rhs_2d");
    check_cost(f.grid, cfg);
    const int n1 = f.grid.n1, n2 = f.grid.n2;
    const double h1 = f.grid.spacing1, h2 = f.grid.spacing2;
    const int K1 = window_halfwidth(n1, cfg.image_layers);
    const int K2 = window_halfwidth(n2, cfg.image_layers);
    const double radius =
        0.5 * (2 * cfg.image_layers + 1) * std::min(f.grid.length1, f.grid.length2);
    const double radius2 = radius * radius;
    const double pref = p.rho_bar() / (2.0 * kTwoPi);

    const ScalarField2D f1 = derivative(f, 0, 1);
    const ScalarField2D f2 = derivative(f, 1, 1);
    const ScalarField2D f11 = derivative(f, 0, 2);
    const ScalarField2D f22 = derivative(f, 1, 2);
    const ScalarField2D f12 = derivative(derivative(f, 0, 1), 1, 1);

    ScalarField2D out = make_field(f.grid);

    parallel_for(n1, [&](int begin, int end) {
        for (int i1 = begin; i1 < end; ++i1) {
            for (int i2 = 0; i2 < n2; ++i2) {
                const double fi = f.at(i1, i2);
                const double g1 = f1.at(i1, i2);
                const double g2 = f2.at(i1, i2);
                KahanSum acc;
                // Disk truncation: a square window's axis-aligned edges see
                // no oscillatory decay and leave an O(1/R) tail, while the
                // symmetric disk tail falls off superlinearly.
                for (int j1 = -K1; j1 <= K1; ++j1) {
                    const double y1 = j1 * h1;
                    const int b1 = f.grid.wrap1(i1 - j1);
                    for (int j2 = -K2; j2 <= K2; ++j2) {
                        if (j1 == 0 && j2 == 0) continue;
                        const double y2 = j2 * h2;
                        if (y1 * y1 + y2 * y2 > radius2) continue;
                        const int b2 = f.grid.wrap2(i2 - j2);
                        const double delta = fi - f.at(b1, b2);
                        const double num = (g1 - f1.at(b1, b2)) * y1 +
                                           (g2 - f2.at(b1, b2)) * y2;
                        const double r2 = y1 * y1 + y2 * y2 + delta * delta;
                        acc.add(num / (r2 * std::sqrt(r2)));
                    }
                }
                double value = pref * h1 * h2 * acc.value();

                if (cfg.singular_rule == SingularRule2D::PolarPatch) {
                    // Leading expansion of the integrand on the punctured
                    // cell is independent of |y|, so the radial integral is
                    // exact and only the angle is discretized.
                    const double a11 = f11.at(i1, i2);
                    const double a12 = f12.at(i1, i2);
                    const double a22 = f22.at(i1, i2);
                    const int ntheta = 8 * cfg.polar_patch_rings;
                    const double dtheta = kTwoPi / ntheta;
                    KahanSum patch;
                    for (int q = 0; q < ntheta; ++q) {
                        const double theta = (q + 0.5) * dtheta;
                        const double c = std::cos(theta);
                        const double s = std::sin(theta);
                        const double quad = a11 * c * c + 2.0 * a12 * c * s +
                                            a22 * s * s;
                        const double slope = g1 * c + g2 * s;
                        const double denom =
                            std::pow(1.0 + slope * slope, 1.5);
                        const double r_edge =
                            std::min(h1 / (2.0 * std::max(std::abs(c), 1e-300)),
                                     h2 / (2.0 * std::max(std::abs(s), 1e-300)));
                        patch.add(quad / denom * r_edge);
                    }
                    value += pref * patch.value() * dtheta;
                }
                out.at(i1, i2) = value;
            }
        }
    });
    return out;
}

ReductionReport reduce_consistency(const ScalarField1D& f1d, const PhysParams& p,
                                   const Quadrature2DConfig& cfg2d,
                                   const Quadrature1DConfig& cfg1d) {
    validate_finite(f1d, "reduce_consistency");
    if (f1d.grid.kind != DomainKind::PeriodicTorus)
        throw DomainViolation("reduce_consistency requires a periodic grid");

    GridSpec2D g2 = make_grid_2d(f1d.grid.n, f1d.grid.n, f1d.grid.length,
                                 f1d.grid.length);
    ScalarField2D f2 = make_field(g2);
    for (int i1 = 0; i1 < g2.n1; ++i1)
        for (int i2 = 0; i2 < g2.n2; ++i2) f2.at(i1, i2) = f1d[i1];

    const ScalarField2D r2 = rhs_2d(f2, p, cfg2d);
    const ScalarField1D r1 = rhs_periodic(f1d, p, cfg1d);

    ReductionReport report;
    for (int i1 = 0; i1 < g2.n1; ++i1)
        for (int i2 = 0; i2 < g2.n2; ++i2)
            report.l_inf_gap = std::max(report.l_inf_gap,
                                        std::abs(r2.at(i1, i2) - r1[i1]));
    return report;
}

std::vector<VelocitySample> velocity_field(const ScalarField2D& f, const PhysParams& p,
                                           const std::vector<std::array<double, 3>>& points,
                                           const Quadrature2DConfig& cfg) {
    validate_finite(f, "velocity_field");
    check_cost(f.grid, cfg);
    const int n1 = f.grid.n1, n2 = f.grid.n2;
    const double h1 = f.grid.spacing1, h2 = f.grid.spacing2;
    const int K1 = window_halfwidth(n1, cfg.image_layers);
    const int K2 = window_halfwidth(n2, cfg.image_layers);
    const double pref = -p.rho_bar() / (2.0 * kTwoPi);
    const double clearance = std::max(h1, h2);

    const ScalarField2D f1 = derivative(f, 0, 1);
    const ScalarField2D f2 = derivative(f, 1, 1);

    std::vector<VelocitySample> samples(points.size());
    for (size_t q = 0; q < points.size(); ++q) {
        const auto& x = points[q];
        const int j0a = static_cast<int>(std::lround(x[0] / h1));
        const int j0b = static_cast<int>(std::lround(x[1] / h2));
        const double f_near = f.at(f.grid.wrap1(j0a), f.grid.wrap2(j0b));
        if (std::abs(x[2] - f_near) <= clearance)
            throw PreconditionError(
                "velocity point too close to the interface (within one cell)");

        KahanSum v1, v2, v3;
        for (int ja = j0a - K1; ja <= j0a + K1; ++ja) {
            const double y1 = x[0] - ja * h1;
            const int b1 = f.grid.wrap1(ja);
            const double wa = edge_weight(ja - j0a, K1);
            for (int jb = j0b - K2; jb <= j0b + K2; ++jb) {
                const double y2 = x[1] - jb * h2;
                const int b2 = f.grid.wrap2(jb);
                const double gap = x[2] - f.at(b1, b2);
                const double r2 = y1 * y1 + y2 * y2 + gap * gap;
                const double w = wa * edge_weight(jb - j0b, K2) / (r2 * std::sqrt(r2));
                v1.add(y1 * w);
                v2.add(y2 * w);
                v3.add((f1.at(b1, b2) * y1 + f2.at(b1, b2) * y2) * w);
            }
        }
        samples[q].position = x;
        samples[q].velocity = {pref * h1 * h2 * v1.value(),
                               pref * h1 * h2 * v2.value(),
                               pref * h1 * h2 * v3.value()};
    }
    return samples;
}

ExtremumRhs rhs_2d_at_extremum(const ScalarField2D& f, const PhysParams& p,
                               const Quadrature2DConfig& cfg) {
    validate_finite(f, "rhs_2d_at_extremum");
    check_cost(f.grid, cfg);
    const int n1 = f.grid.n1, n2 = f.grid.n2;
    const double h1 = f.grid.spacing1, h2 = f.grid.spacing2;
    const int K1 = window_halfwidth(n1, cfg.image_layers);
    const int K2 = window_halfwidth(n2, cfg.image_layers);

    ExtremumRhs result;
    double peak = f.samples[0];
    for (size_t i = 1; i < f.samples.size(); ++i)
        if (f.samples[i] > peak) {
            peak = f.samples[i];
            result.index = static_cast<int>(i);
        }
    const double tie_tol = 1e-13 * (std::abs(peak) + 1.0);
    int hits = 0;
    for (double v : f.samples)
        if (peak - v <= tie_tol) ++hits;
    result.tie = hits > 1;

    const int it1 = result.index / n2;
    const int it2 = result.index % n2;
    const double radius =
        0.5 * (2 * cfg.image_layers + 1) * std::min(f.grid.length1, f.grid.length2);
    const double radius2 = radius * radius;

    KahanSum acc;
    for (int j1 = -K1; j1 <= K1; ++j1) {
        const double y1 = j1 * h1;
        const int b1 = f.grid.wrap1(it1 - j1);
        for (int j2 = -K2; j2 <= K2; ++j2) {
            if (j1 == 0 && j2 == 0) continue;
            const double y2 = j2 * h2;
            if (y1 * y1 + y2 * y2 > radius2) continue;
            const double g = peak - f.at(b1, f.grid.wrap2(it2 - j2));
            const double r2 = y1 * y1 + y2 * y2 + g * g;
            acc.add(g / (r2 * std::sqrt(r2)));
        }
    }
    double integral = h1 * h2 * acc.value();

    // The numerator has mean (M - mean f) > 0, so the exterior of the disk
    // contributes at first order; add its closed-form integral. The zero-mean
    // remainder decays superlinearly and is left to the window.
    KahanSum fbar;
    for (double v : f.samples) fbar.add(v);
    const double gbar = peak - fbar.value() / static_cast<double>(f.samples.size());
    integral += kTwoPi * gbar / std::sqrt(radius2 + gbar * gbar);

    if (cfg.singular_rule == SingularRule2D::PolarPatch) {
        // On the center cell g ~ -y^T H y / 2, so the integrand tends to
        // -yhat^T H yhat / (2r) and the radial integral is exact.
        const double a11 = derivative(f, 0, 2).at(it1, it2);
        const double a22 = derivative(f, 1, 2).at(it1, it2);
        const double a12 = derivative(derivative(f, 0, 1), 1, 1).at(it1, it2);
        const int ntheta = 8 * cfg.polar_patch_rings;
        const double dtheta = kTwoPi / ntheta;
        KahanSum patch;
        for (int q = 0; q < ntheta; ++q) {
            const double theta = (q + 0.5) * dtheta;
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const double quad = a11 * c * c + 2.0 * a12 * c * s + a22 * s * s;
            const double r_edge =
                std::min(h1 / (2.0 * std::max(std::abs(c), 1e-300)),
                         h2 / (2.0 * std::max(std::abs(s), 1e-300)));
            patch.add(-0.5 * quad * r_edge);
        }
        integral += patch.value() * dtheta;
    }

    result.value = -(p.rho_bar() / (2.0 * kTwoPi)) * integral;
    return result;
}

}  // namespace muskat
