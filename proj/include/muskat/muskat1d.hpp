#pragma once

#include "muskat/spectral.hpp"

namespace muskat {

enum class NodeOffset { Collocated, HalfShifted };
enum class SingularRule1D { AnalyticLimit, SkipNode };

struct Quadrature1DConfig {
    NodeOffset node_offset = NodeOffset::Collocated;
    SingularRule1D singular_rule = SingularRule1D::AnalyticLimit;
    // TruncatedLine only; 0 resolves to length/2.
    double line_truncation_radius = 0.0;
};

struct ExtremumRhs {
    int index = 0;
    double value = 0.0;
    bool tie = false;  // constant field, argmax undefined up to ties
};

// Split of d/dx f_t into the curvature-weighted part (n1) and the
// kernel-weighted part (n2); n1 + n2 equals the derivative of the RHS.
struct SlopeDecomposition {
    ScalarField1D n1;
    ScalarField1D n2;
};

// Closed form of the image sum  sum_k (a+2pik) / ((a+2pik)^2 + d^2)
// on the 2 pi torus: (1/2) sin a / (cosh d - cos a).
double periodized_kernel(double alpha, double d);
// Same sum with images spaced by `length`.
double periodized_kernel(double alpha, double d, double length);

// Image sum  sum_k 1 / ((a+Lk)^2 + d^2)  in closed form (extremum kernel).
double periodized_extremum_kernel(double alpha, double d, double length);

// f_t on the periodic torus: one-period trapezoid quadrature against the
// periodized kernel; the alpha = 0 node carries the removable-singularity
// limit f''(x) / (1 + f'(x)^2) under AnalyticLimit.
ScalarField1D rhs_periodic(const ScalarField1D& f, const PhysParams& p,
                           const Quadrature1DConfig& cfg = {});

// f_t on the truncated line: raw kernel, symmetric window [-R, R].
ScalarField1D rhs_line(const ScalarField1D& f, const PhysParams& p,
                       const Quadrature1DConfig& cfg = {});

// The I1 integral of the extremum identity, evaluated at the grid argmax.
// Nonpositive in the stable regime; equals the full RHS there (I2 = 0).
ExtremumRhs rhs_at_extremum(const ScalarField1D& f, const PhysParams& p,
                            const Quadrature1DConfig& cfg = {});

// Quadrature of the exact-derivative integral I2 at an extremum node;
// vanishes identically in the continuum.
double i2_residual(const ScalarField1D& f, int index, const PhysParams& p,
                   const Quadrature1DConfig& cfg = {});

// N1/N2 split of the differentiated contour equation.
SlopeDecomposition slope_rhs(const ScalarField1D& f, const PhysParams& p,
                             const Quadrature1DConfig& cfg = {});

// Cross-validation route: quadrature of the arctan primitive followed by a
// spectral x-derivative. Mean-free by construction.
ScalarField1D arctan_form_rhs(const ScalarField1D& f, const PhysParams& p);

}  // namespace muskat
