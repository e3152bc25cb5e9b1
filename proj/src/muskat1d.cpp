#include "muskat/muskat1d.hpp"

#include <algorithm>
#include <cmath>

#include "muskat/summation.hpp"

namespace muskat {

namespace {

constexpr double kPi = kTwoPi / 2.0;

double sinhc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

// Closed forms for the full image sums of 1/gamma^p over gamma = beta + Lk,
// lam = 2 pi / L. Used to replace subtracted power-law tails exactly.
double image_sum_p2(double beta, double lam) {
    const double s = std::sin(lam * beta / 2.0);
    return lam * lam / (4.0 * s * s);
}

double image_sum_p3(double beta, double lam) {
    const double half = lam * beta / 2.0;
    const double s = std::sin(half);
    return lam * lam * lam * std::cos(half) / (8.0 * s * s * s);
}

double image_sum_p4(double beta, double lam) {
    const double half = lam * beta / 2.0;
    const double s = std::sin(half);
    const double c = std::cos(half);
    const double s2 = s * s;
    return lam * lam * lam * lam * (1.0 + 2.0 * c * c) / (48.0 * s2 * s2);
}

double resolve_radius(const GridSpec1D& grid, const Quadrature1DConfig& cfg) {
    double radius = cfg.line_truncation_radius;
    if (radius <= 0.0) radius = grid.length / 2.0;
    if (radius > grid.length / 2.0)
        throw ConfigError("line_truncation_radius exceeds half the box");
    return radius;
}

}  // namespace

double periodized_kernel(double alpha, double d) {
    return 0.5 * std::sin(alpha) / (std::cosh(d) - std::cos(alpha));
}

double periodized_kernel(double alpha, double d, double length) {
    const double lam = kTwoPi / length;
    return (kPi / length) * std::sin(lam * alpha) /
           (std::cosh(lam * d) - std::cos(lam * alpha));
}

double periodized_extremum_kernel(double alpha, double d, double length) {
    const double lam = kTwoPi / length;
    return (lam * lam / 2.0) * sinhc(lam * d) /
           (std::cosh(lam * d) - std::cos(lam * alpha));
}

ScalarField1D rhs_periodic(const ScalarField1D& f, const PhysParams& p,
                           const Quadrature1DConfig& cfg) {
    validate_finite(f, "rhs_periodic");
    if (f.grid.kind != DomainKind::PeriodicTorus)
        throw DomainViolation("rhs_periodic requires a periodic grid");
    const int n = f.grid.n;
    const double h = f.grid.spacing;
    const double L = f.grid.length;
    const double pref = p.rho_bar() / kTwoPi;

    ScalarField1D out = make_field(f.grid);
    const ScalarField1D fx = derivative(f, 1);

    const double lam = kTwoPi / L;
    const double knorm = kPi / L;

    if (cfg.node_offset == NodeOffset::HalfShifted) {
        // Quadrature nodes alpha = (j + 1/2) h never hit the singularity;
        // the shifted samples come from spectral interpolation.
        const ScalarField1D fd = resample_double(f);
        const ScalarField1D fdx = resample_double(fx);
        std::vector<double> sin_tab(n), cos_tab(n);
        for (int j = 0; j < n; ++j) {
            sin_tab[j] = std::sin(lam * (j + 0.5) * h);
            cos_tab[j] = std::cos(lam * (j + 0.5) * h);
        }
        parallel_for(n, [&](int begin, int end) {
            for (int i = begin; i < end; ++i) {
                KahanSum acc;
                const double fi = f[i];
                const double si = fx[i];
                for (int j = 0; j < n; ++j) {
                    const int back = 2 * i - (2 * j + 1);
                    const double delta = fi - fd.at_wrapped(back);
                    acc.add((si - fdx.at_wrapped(back)) * knorm * sin_tab[j] /
                            (std::cosh(lam * delta) - cos_tab[j]));
                }
                out[i] = pref * h * acc.value();
            }
        });
        return out;
    }

    const ScalarField1D fxx = derivative(f, 2);
    std::vector<double> sin_tab(n), cos_tab(n);
    for (int j = 0; j < n; ++j) {
        sin_tab[j] = std::sin(lam * j * h);
        cos_tab[j] = std::cos(lam * j * h);
    }
    parallel_for(n, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            KahanSum acc;
            const double fi = f[i];
            const double si = fx[i];
            if (cfg.singular_rule == SingularRule1D::AnalyticLimit)
                acc.add(fxx[i] / (1.0 + si * si));
            for (int j = 1; j < n; ++j) {
                const double delta = fi - f.at_wrapped(i - j);
                acc.add((si - fx.at_wrapped(i - j)) * knorm * sin_tab[j] /
                        (std::cosh(lam * delta) - cos_tab[j]));
            }
            out[i] = pref * h * acc.value();
        }
    });
    return out;
}

ScalarField1D rhs_line(const ScalarField1D& f, const PhysParams& p,
                       const Quadrature1DConfig& cfg) {
    validate_finite(f, "rhs_line");
    if (f.grid.kind != DomainKind::TruncatedLine)
        throw DomainViolation("rhs_line requires a TruncatedLine grid");
    const int n = f.grid.n;
    const double h = f.grid.spacing;
    const double pref = p.rho_bar() / kTwoPi;
    const double radius = resolve_radius(f.grid, cfg);
    const int m = static_cast<int>(std::lround(radius / h));

    ScalarField1D out = make_field(f.grid);
    const ScalarField1D fx = derivative(f, 1);

    if (cfg.node_offset == NodeOffset::HalfShifted) {
        const ScalarField1D fd = resample_double(f);
        const ScalarField1D fdx = resample_double(fx);
        parallel_for(n, [&](int begin, int end) {
            for (int i = begin; i < end; ++i) {
                KahanSum acc;
                const double fi = f[i];
                const double si = fx[i];
                for (int j = -m; j < m; ++j) {
                    const double alpha = (j + 0.5) * h;
                    const int back = 2 * i - (2 * j + 1);
                    const double delta = fi - fd.at_wrapped(back);
                    acc.add((si - fdx.at_wrapped(back)) * alpha /
                            (alpha * alpha + delta * delta));
                }
                out[i] = pref * h * acc.value();
            }
        });
        return out;
    }

    const ScalarField1D fxx = derivative(f, 2);
    parallel_for(n, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            KahanSum acc;
            const double fi = f[i];
            const double si = fx[i];
            if (cfg.singular_rule == SingularRule1D::AnalyticLimit)
                acc.add(fxx[i] / (1.0 + si * si));
            for (int j = -m; j <= m; ++j) {
                if (j == 0) continue;
                const double alpha = j * h;
                const double delta = fi - f.at_wrapped(i - j);
                const double w = std::abs(j) == m ? 0.5 : 1.0;  // trapezoid ends
                acc.add(w * (si - fx.at_wrapped(i - j)) * alpha /
                        (alpha * alpha + delta * delta));
            }
            out[i] = pref * h * acc.value();
        }
    });
    return out;
}

ExtremumRhs rhs_at_extremum(const ScalarField1D& f, const PhysParams& p,
                            const Quadrature1DConfig& cfg) {
    validate_finite(f, "rhs_at_extremum");
    const int n = f.grid.n;
    const double h = f.grid.spacing;
    const double L = f.grid.length;
    const bool periodic = f.grid.kind == DomainKind::PeriodicTorus;

    ExtremumRhs result;
    double peak = f[0];
    for (int i = 1; i < n; ++i)
        if (f[i] > peak) {
            peak = f[i];
            result.index = i;
        }
    const double tie_tol = 1e-13 * (std::abs(peak) + 1.0);
    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (peak - f[i] <= tie_tol) ++hits;
    result.tie = hits > 1;

    const int it = result.index;
    const double radius = periodic ? L / 2.0 : resolve_radius(f.grid, cfg);
    const int m = static_cast<int>(std::lround(radius / h));

    auto kernel = [&](double alpha, double g) {
        if (periodic) return periodized_extremum_kernel(alpha, g, L);
        return 1.0 / (alpha * alpha + g * g);
    };

    KahanSum acc;
    if (cfg.node_offset == NodeOffset::HalfShifted) {
        const ScalarField1D fd = resample_double(f);
        const int lo = periodic ? 0 : -m;
        const int hi = periodic ? n : m;
        for (int j = lo; j < hi; ++j) {
            const double alpha = (j + 0.5) * h;
            const double g = peak - fd.at_wrapped(2 * it - (2 * j + 1));
            acc.add(g * kernel(alpha, g));
        }
    } else {
        const ScalarField1D fxx = derivative(f, 2);
        if (cfg.singular_rule == SingularRule1D::AnalyticLimit)
            acc.add(-fxx[it] / 2.0);
        const int lo = periodic ? 1 : -m;
        const int hi = periodic ? n - 1 : m;
        for (int j = lo; j <= hi; ++j) {
            if (j == 0) continue;
            const double alpha = j * h;
            const double g = peak - f.at_wrapped(it - j);
            const double w = (!periodic && std::abs(j) == m) ? 0.5 : 1.0;
            acc.add(w * g * kernel(alpha, g));
        }
    }
    result.value = -(p.rho_bar() / kTwoPi) * h * acc.value();
    return result;
}

double i2_residual(const ScalarField1D& f, int index, const PhysParams& p,
                   const Quadrature1DConfig& cfg) {
    validate_finite(f, "i2_residual");
    const int n = f.grid.n;
    if (index < 0 || index >= n) throw ConfigError("i2_residual: index out of range");
    const double h = f.grid.spacing;
    const bool periodic = f.grid.kind == DomainKind::PeriodicTorus;

    double radius = cfg.line_truncation_radius;
    if (radius <= 0.0) radius = periodic ? 128.0 * kPi : f.grid.length / 2.0;
    if (!periodic) radius = std::min(radius, f.grid.length / 2.0);
    const int m = static_cast<int>(std::lround(radius / h));

    const ScalarField1D fx = derivative(f, 1);
    const ScalarField1D fxx = derivative(f, 2);
    const double fi = f[index];

    // Integrand dG(u)/d alpha with u = delta / alpha; the integral of an
    // exact derivative with vanishing end values, so the result measures
    // pure quadrature error.
    auto g_prime = [](double v) {
        const double q = 1.0 + v * v;
        return 2.0 * v * v / (q * q);
    };

    KahanSum acc;
    for (int j = -m; j <= m; ++j) {
        double u, du;
        if (j == 0) {
            u = fx[index];
            du = -fxx[index] / 2.0;
        } else {
            const double alpha = j * h;
            const double delta = fi - f.at_wrapped(index - j);
            const double dprime = fx.at_wrapped(index - j);
            u = delta / alpha;
            du = (dprime * alpha - delta) / (alpha * alpha);
        }
        const double w = std::abs(j) == m ? 0.5 : 1.0;
        acc.add(w * g_prime(u) * du);
    }
    return -(p.rho_bar() / kTwoPi) * h * acc.value();
}

SlopeDecomposition slope_rhs(const ScalarField1D& f, const PhysParams& p,
                             const Quadrature1DConfig& cfg) {
    validate_finite(f, "slope_rhs");
    if (f.grid.kind != DomainKind::PeriodicTorus)
        throw DomainViolation("slope_rhs requires a periodic grid");
    if (cfg.node_offset != NodeOffset::Collocated)
        throw ConfigError("slope_rhs supports collocated quadrature only");
    const int n = f.grid.n;
    const double h = f.grid.spacing;
    const double L = f.grid.length;
    const double lam = kTwoPi / L;
    const double pref = p.rho_bar() / kTwoPi;
    constexpr int kImages = 32;

    const ScalarField1D fx = derivative(f, 1);
    const ScalarField1D fxx = derivative(f, 2);
    const ScalarField1D fxxx = derivative(f, 3);

    SlopeDecomposition out{make_field(f.grid), make_field(f.grid)};

    // Second-kernel integrand and its power-law tail; the tail is summed
    // over all images in closed form, so only |k| <= kImages of the
    // difference (which decays like gamma^-5) is summed directly.
    auto integrand = [](double gamma, double a, double delta) {
        const double r = delta / gamma;
        const double q = 1.0 + r * r;
        const double shape = 2.0 * (1.0 + a * r) / (q * q);
        return (a * gamma - delta) / (gamma * gamma * gamma) * shape;
    };
    auto tail = [](double gamma, double a, double delta) {
        const double g2 = gamma * gamma;
        return 2.0 * a / g2 + 2.0 * delta * (a * a - 1.0) / (g2 * gamma) -
               6.0 * a * delta * delta / (g2 * g2);
    };

    parallel_for(n, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double fi = f[i];
            const double a = fx[i];
            const double one_a2 = 1.0 + a * a;

            KahanSum acc1, acc2;
            // alpha = 0 finite parts of both columns.
            acc1.add(a * fxx[i] / (one_a2 * one_a2));
            acc2.add(1.5 * a * fxx[i] * fxx[i] / (one_a2 * one_a2) -
                     fxxx[i] / (3.0 * one_a2) +
                     2.0 * a * kPi * kPi / (3.0 * L * L));

            for (int j = 1; j < n; ++j) {
                const double beta = j * h;
                const double delta = fi - f.at_wrapped(i - j);
                acc1.add(periodized_kernel(beta, delta, L));

                KahanSum images;
                for (int k = -kImages; k <= kImages; ++k) {
                    const double gamma = beta + L * k;
                    images.add(integrand(gamma, a, delta) - tail(gamma, a, delta));
                }
                images.add(2.0 * a * image_sum_p2(beta, lam));
                images.add(2.0 * delta * (a * a - 1.0) * image_sum_p3(beta, lam));
                images.add(-6.0 * a * delta * delta * image_sum_p4(beta, lam));
                acc2.add(images.value());
            }
            out.n1[i] = pref * fxx[i] * h * acc1.value();
            out.n2[i] = -pref * h * acc2.value();
        }
    });
    return out;
}

ScalarField1D arctan_form_rhs(const ScalarField1D& f, const PhysParams& p) {
    validate_finite(f, "arctan_form_rhs");
    if (f.grid.kind != DomainKind::PeriodicTorus)
        throw DomainViolation("arctan_form_rhs requires a periodic grid");
    const int n = f.grid.n;
    const double h = f.grid.spacing;
    const double L = f.grid.length;
    const double lam = kTwoPi / L;
    constexpr int kImages = 24;

    const ScalarField1D fx = derivative(f, 1);

    // Antiderivative route: quadrature of the arctan primitive, then one
    // spectral derivative in x. The image sum of atan(delta/gamma) is
    // accelerated by subtracting the first two Taylor terms and restoring
    // them through closed-form power sums.
    ScalarField1D primitive = make_field(f.grid);
    parallel_for(n, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double fi = f[i];
            KahanSum acc;
            acc.add(std::atan(fx[i]));
            for (int j = 1; j < n; ++j) {
                const double alpha = j * h;
                const double delta = fi - f.at_wrapped(i - j);
                KahanSum images;
                for (int k = -kImages; k <= kImages; ++k) {
                    const double gamma = alpha + L * k;
                    const double r = delta / gamma;
                    images.add(std::atan(r) - r + r * r * r / 3.0);
                }
                images.add(delta * (lam / 2.0) / std::tan(lam * alpha / 2.0));
                images.add(-(delta * delta * delta / 3.0) * image_sum_p3(alpha, lam));
                acc.add(images.value());
            }
            primitive[i] = h * acc.value();
        }
    });

    ScalarField1D out = derivative(primitive, 1);
    const double pref = p.rho_bar() / kTwoPi;
    for (double& v : out.samples) v *= pref;
    return out;
}

}  // namespace muskat
