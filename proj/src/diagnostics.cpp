#include "muskat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "muskat/summation.hpp"

namespace muskat {

namespace {

constexpr double kPi = kTwoPi / 2.0;

double mode_energy_fraction_1d(const ScalarField1D& f) {
    const Spectrum1D s = transform(f);
    const int half = f.grid.n / 2;
    const double cut = (2.0 / 3.0) * half;
    KahanSum total, tail;
    for (int k = 1; k <= half; ++k) {
        const double w = (k == half) ? 1.0 : 2.0;
        const double e = w * std::norm(s.modes[k]);
        total.add(e);
        if (k >= cut) tail.add(e);
    }
    return total.value() > 0.0 ? tail.value() / total.value() : 0.0;
}

double mode_energy_fraction_2d(const ScalarField2D& f) {
    const Spectrum2D s = transform(f);
    const int half1 = f.grid.n1 / 2;
    const int half2 = f.grid.n2 / 2;
    KahanSum total, tail;
    for (int r = 0; r < f.grid.n1; ++r) {
        const int k1 = s.signed_k1(r);
        for (int k2 = 0; k2 <= half2; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            const double w = (k2 == 0 || k2 == half2) ? 1.0 : 2.0;
            const double e = w * std::norm(s.modes[static_cast<size_t>(r) * (half2 + 1) + k2]);
            total.add(e);
            const double reach = std::max(std::abs(k1) / static_cast<double>(half1),
                                          k2 / static_cast<double>(half2));
            if (reach >= 2.0 / 3.0) tail.add(e);
        }
    }
    return total.value() > 0.0 ? tail.value() / total.value() : 0.0;
}

template <class Field>
TimeSeriesRecord observe_impl(const Field& f, double t, double tail) {
    const FieldNorms nm = norms(f);
    TimeSeriesRecord rec;
    rec.t = t;
    rec.linf = nm.linf;
    rec.l1 = nm.l1;
    rec.mean = nm.mean;
    rec.fmax = nm.max;
    rec.fmin = nm.min;
    rec.max_slope = nm.max_slope;
    rec.spectrum_tail = tail;
    rec.argmax_index = 0;
    for (size_t i = 1; i < f.samples.size(); ++i)
        if (f.samples[i] > f.samples[rec.argmax_index])
            rec.argmax_index = static_cast<int>(i);
    return rec;
}

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    KahanSum sx, sy;
    for (size_t i = 0; i < n; ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    KahanSum sxx, sxy, syy;
    for (size_t i = 0; i < n; ++i) {
        sxx.add((x[i] - mx) * (x[i] - mx));
        sxy.add((x[i] - mx) * (y[i] - my));
        syy.add((y[i] - my) * (y[i] - my));
    }
    LineFit fit;
    if (sxx.value() <= 0.0) throw PreconditionError("degenerate fit abscissae");
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy.value() > 0.0
                        ? (sxy.value() * sxy.value()) / (sxx.value() * syy.value())
                        : 1.0;
    return fit;
}

}  // namespace

TimeSeriesRecord observe(const ScalarField1D& f, double t) {
    validate_finite(f, "observe");
    return observe_impl(f, t, mode_energy_fraction_1d(f));
}

TimeSeriesRecord observe(const ScalarField2D& f, double t) {
    validate_finite(f, "observe");
    return observe_impl(f, t, mode_energy_fraction_2d(f));
}

std::string format_verdict(const Verdict& v) {
    std::ostringstream out;
    out.precision(15);
    out << "CHECK " << v.check_name << ' ' << (v.pass ? "PASS" : "FAIL")
        << " measured=" << v.measured << " bound=" << v.bound
        << " tol=" << v.tolerance;
    return out.str();
}

BoundConstants BoundConstants::compute(double linf0, double l1_0, double rho_bar) {
    if (linf0 < 0.0 || l1_0 < 0.0)
        throw ConfigError("BoundConstants: norms must be nonnegative");
    BoundConstants c;
    const double m2 = linf0 * linf0;

    // The decay constants depend on a free integer parameter; take the
    // best value by direct scan (the maximizer sits near n ~ linf0).
    double best32 = 0.0, best42 = 0.0;
    for (int n = 1; n <= 1000000; ++n) {
        const double npi = n * kPi;
        best32 = std::max(best32, (2.0 * npi) / (npi * npi + 4.0 * m2) / kTwoPi);
        const double denom = std::pow(2.0 * npi * npi + 4.0 * m2, 1.5);
        best42 = std::max(best42, (2.0 * npi) * (2.0 * npi) / denom / (2.0 * kTwoPi));
    }
    c.c_prop32 = rho_bar * best32;
    c.c_prop42 = rho_bar * best42;

    const double denom33 = l1_0 * l1_0 + 2.0 * l1_0 * m2 + 2.0 * m2 * m2;
    c.c_prop33 = denom33 > 0.0 ? rho_bar * (1.0 / (4.0 * kTwoPi)) * l1_0 / denom33 : 0.0;
    c.c_prop43 = rho_bar * 0.125 /
                 std::pow(1.0 + 2.0 * l1_0 / kPi + 4.0 * m2 * linf0, 1.5);
    return c;
}

Verdict check_max_principle(std::span<const TimeSeriesRecord> series,
                            double tolerance) {
    if (series.empty()) throw PreconditionError("empty series");
    Verdict v;
    v.check_name = "max_principle";
    v.bound = 0.0;
    v.tolerance = tolerance;
    double worst = 0.0;
    for (size_t k = 1; k < series.size(); ++k) {
        worst = std::max(worst, series[k].linf - series[k - 1].linf);
        worst = std::max(worst, series[k].fmax - series[k - 1].fmax);
        worst = std::max(worst, series[k - 1].fmin - series[k].fmin);
        worst = std::max(worst, series[k].linf - series[0].linf);
    }
    v.measured = worst;
    v.pass = worst <= tolerance;
    return v;
}

Verdict check_exponential_bound(std::span<const TimeSeriesRecord> series,
                                const BoundConstants& constants, ExpBoundKind which,
                                double tolerance) {
    if (series.empty()) throw PreconditionError("empty series");
    if (std::abs(series.front().mean) >= 1e-10)
        throw PreconditionError("exponential bound needs mean-zero initial data");
    const double c = which == ExpBoundKind::Prop3_2 ? constants.c_prop32
                                                    : constants.c_prop42;
    const double linf0 = series.front().linf;
    Verdict v;
    v.check_name = which == ExpBoundKind::Prop3_2 ? "linf_exp_decay_1d"
                                                  : "linf_exp_decay_2d";
    v.bound = 1.0;
    v.tolerance = tolerance;
    double worst = 0.0;
    for (const auto& rec : series) {
        const double envelope = linf0 * std::exp(-c * rec.t);
        if (envelope > 0.0) worst = std::max(worst, rec.linf / envelope);
    }
    v.measured = worst;
    v.pass = worst <= 1.0 + tolerance;
    return v;
}

Verdict check_algebraic_bound(std::span<const TimeSeriesRecord> series,
                              const BoundConstants& constants, AlgBoundKind which,
                              double tolerance) {
    if (series.empty()) throw PreconditionError("empty series");
    const auto& first = series.front();
    if (!(first.fmin >= -1e-12 || first.fmax <= 1e-12))
        throw PreconditionError("algebraic bound needs sign-definite initial data");
    const double linf0 = first.linf;
    Verdict v;
    v.bound = 1.0;
    v.tolerance = tolerance;
    double worst = 0.0;
    if (which == AlgBoundKind::Prop3_3) {
        v.check_name = "linf_algebraic_decay_1d";
        for (const auto& rec : series) {
            const double envelope = linf0 / (1.0 + constants.c_prop33 * rec.t);
            if (envelope > 0.0) worst = std::max(worst, rec.linf / envelope);
        }
    } else {
        // d/dt ||f|| <= -c ||f||^{3/2} integrates to
        // ||f||(t) <= linf0 / (1 + (c sqrt(linf0)/2) t)^2.
        v.check_name = "linf_algebraic_decay_2d";
        const double c_prime = constants.c_prop43 * std::sqrt(linf0) / 2.0;
        for (const auto& rec : series) {
            const double root = 1.0 + c_prime * rec.t;
            const double envelope = linf0 / (root * root);
            if (envelope > 0.0) worst = std::max(worst, rec.linf / envelope);
        }
    }
    v.measured = worst;
    v.pass = worst <= 1.0 + tolerance;
    return v;
}

Verdict check_slope_bound(std::span<const TimeSeriesRecord> series) {
    if (series.empty()) throw PreconditionError("empty series");
    if (series.front().max_slope > 1.0 - 1e-3)
        throw PreconditionError("slope bound needs initial max_slope <= 1 - 1e-3");
    Verdict v;
    v.check_name = "slope_bound";
    v.bound = 1.0;
    v.tolerance = 1e-6;
    double peak = 0.0;
    double worst_uptick = 0.0;
    double crossing_time = -1.0;
    for (size_t k = 0; k < series.size(); ++k) {
        peak = std::max(peak, series[k].max_slope);
        if (series[k].max_slope >= 1.0 && crossing_time < 0.0)
            crossing_time = series[k].t;
        if (k > 0)
            worst_uptick =
                std::max(worst_uptick, series[k].max_slope - series[k - 1].max_slope);
    }
    v.measured = peak;
    v.pass = peak < 1.0 && worst_uptick <= v.tolerance;
    if (crossing_time >= 0.0) {
        std::ostringstream note;
        note.precision(15);
        note << "slope reached 1 at t=" << crossing_time;
        v.notes = note.str();
    } else if (!v.pass) {
        v.notes = "slope not monotone";
    }
    return v;
}

DecayFit fit_series(std::span<const double> times, std::span<const double> values,
                    DecayModel model) {
    if (times.size() != values.size() || times.size() < 10)
        throw PreconditionError("fit needs >= 10 samples");
    std::vector<double> y(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw PreconditionError("fit needs positive values");
        switch (model) {
            case DecayModel::Exponential: y[i] = std::log(values[i]); break;
            case DecayModel::AlgebraicP1: y[i] = 1.0 / values[i]; break;
            case DecayModel::AlgebraicP2: y[i] = 1.0 / std::sqrt(values[i]); break;
        }
    }
    const LineFit line = least_squares_line(times, y);
    DecayFit fit;
    fit.quality = line.r_squared;
    if (model == DecayModel::Exponential) {
        fit.value = -line.slope;
    } else {
        if (line.intercept == 0.0) throw PreconditionError("degenerate algebraic fit");
        fit.value = line.slope / line.intercept;
    }
    return fit;
}

DecayFit fit_decay(std::span<const TimeSeriesRecord> series, DecayModel model) {
    std::vector<double> t(series.size()), y(series.size());
    for (size_t i = 0; i < series.size(); ++i) {
        t[i] = series[i].t;
        y[i] = series[i].linf;
    }
    return fit_series(t, y, model);
}

}  // namespace muskat
