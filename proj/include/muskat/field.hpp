#pragma once

#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

enum class Regime { Stable, Unstable, Degenerate };

// Densities of the lower (rho2) and upper (rho1) fluid. The interface
// dynamics depend only on the jump rho_bar = rho2 - rho1.
struct PhysParams {
    double rho1 = 1.0;
    double rho2 = 2.0;

    PhysParams() = default;
    PhysParams(double rho1_, double rho2_) : rho1(rho1_), rho2(rho2_) {
        if (rho1 < 0.0 || rho2 < 0.0)
            throw ConfigError("densities must be nonnegative");
    }

    double rho_bar() const { return rho2 - rho1; }
    Regime regime() const {
        const double rb = rho_bar();
        if (rb > 0.0) return Regime::Stable;
        if (rb < 0.0) return Regime::Unstable;
        return Regime::Degenerate;
    }
};

struct ScalarField1D {
    GridSpec1D grid;
    std::vector<double> samples;

    double operator[](int j) const { return samples[j]; }
    double& operator[](int j) { return samples[j]; }
    double at_wrapped(int j) const { return samples[grid.wrap(j)]; }
};

struct ScalarField2D {
    GridSpec2D grid;
    std::vector<double> samples;

    double at(int i1, int i2) const { return samples[grid.index(i1, i2)]; }
    double& at(int i1, int i2) { return samples[grid.index(i1, i2)]; }
};

ScalarField1D make_field(const GridSpec1D& grid);
ScalarField2D make_field(const GridSpec2D& grid);

// All samples finite; violation is a hard error everywhere.
void validate_finite(const ScalarField1D& f, const char* where);
void validate_finite(const ScalarField2D& f, const char* where);

// Strict ingestion gate for TruncatedLine data: |f| <= tol within the
// outer 5% of the box on both sides.
void validate_line_decay(const ScalarField1D& f, double tol = 1e-8);

}  // namespace muskat
