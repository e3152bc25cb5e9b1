#pragma once

#include <span>
#include <string>
#include <vector>

#include "muskat/spectral.hpp"

namespace muskat {

struct TimeSeriesRecord {
    double t = 0.0;
    double linf = 0.0;
    double l1 = 0.0;
    double mean = 0.0;
    double fmax = 0.0;       // M(t)
    double fmin = 0.0;       // m(t)
    double max_slope = 0.0;
    int argmax_index = 0;
    double spectrum_tail = 0.0;  // energy fraction in the top third of modes
};

TimeSeriesRecord observe(const ScalarField1D& f, double t);
TimeSeriesRecord observe(const ScalarField2D& f, double t);

struct Verdict {
    std::string check_name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    std::string notes;
};

// "CHECK <name> PASS|FAIL measured=<v> bound=<b> tol=<t>"
std::string format_verdict(const Verdict& v);

// Decay constants from the proofs, as functions of the initial norms.
// Each constant carries the rho_bar prefactor.
struct BoundConstants {
    double c_prop32 = 0.0;
    double c_prop33 = 0.0;
    double c_prop42 = 0.0;
    double c_prop43 = 0.0;

    static BoundConstants compute(double linf0, double l1_0, double rho_bar);
};

enum class ExpBoundKind { Prop3_2, Prop4_2 };
enum class AlgBoundKind { Prop3_3, Prop4_3 };
enum class DecayModel { Exponential, AlgebraicP1, AlgebraicP2 };

Verdict check_max_principle(std::span<const TimeSeriesRecord> series,
                            double tolerance = 1e-9);
Verdict check_exponential_bound(std::span<const TimeSeriesRecord> series,
                                const BoundConstants& constants, ExpBoundKind which,
                                double tolerance = 0.01);
Verdict check_algebraic_bound(std::span<const TimeSeriesRecord> series,
                              const BoundConstants& constants, AlgBoundKind which,
                              double tolerance = 0.05);
Verdict check_slope_bound(std::span<const TimeSeriesRecord> series);

struct DecayFit {
    double value = 0.0;    // rate (Exponential) or constant C (algebraic models)
    double quality = 0.0;  // coefficient of determination of the linearized fit
};

DecayFit fit_decay(std::span<const TimeSeriesRecord> series, DecayModel model);
// Same fit on a raw (t, y) series, y > 0.
DecayFit fit_series(std::span<const double> times, std::span<const double> values,
                    DecayModel model);

}  // namespace muskat
