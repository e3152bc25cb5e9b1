#pragma once

#include <complex>
#include <vector>

#include "muskat/field.hpp"

namespace muskat {

// Mode amplitudes normalized so that f(x) = sum_k modes[k] e^{i xi_k x},
// xi_k = 2 pi k / length. Only k = 0..n/2 is stored; negative modes follow
// from conjugate symmetry of real fields.
struct Spectrum1D {
    GridSpec1D grid;
    std::vector<std::complex<double>> modes;  // size n/2 + 1

    std::complex<double> amplitude(int k) const {
        if (k >= 0) return modes[k];
        return std::conj(modes[-k]);
    }
    double wavenumber(int k) const { return kTwoPi * k / grid.length; }
};

// Row-major half-spectrum: modes[k1 * (n2/2+1) + k2], k1 in [0, n1) with
// rows k1 > n1/2 meaning k1 - n1, k2 in [0, n2/2].
struct Spectrum2D {
    GridSpec2D grid;
    std::vector<std::complex<double>> modes;

    int signed_k1(int row) const { return row <= grid.n1 / 2 ? row : row - grid.n1; }
};

Spectrum1D transform(const ScalarField1D& f);
ScalarField1D inverse_transform(const Spectrum1D& s);
Spectrum2D transform(const ScalarField2D& f);
ScalarField2D inverse_transform(const Spectrum2D& s);

// Spectral differentiation, multiplier (i xi)^order. For TruncatedLine
// grids the field must be decaying near the box boundary (checked).
ScalarField1D derivative(const ScalarField1D& f, int order);
ScalarField2D derivative(const ScalarField2D& f, int axis, int order);

// Half Laplacian: multiplier |xi|.
ScalarField1D lambda_op(const ScalarField1D& f);
ScalarField2D lambda_op(const ScalarField2D& f);

// Riesz transform along axis (0 or 1): multiplier -i xi_axis / |xi|.
ScalarField2D riesz(const ScalarField2D& f, int axis);

// Exact solution of the linearized interface equation:
// f_hat(xi, t) = f0_hat(xi) exp(-(rho_bar/2) |xi| t).
ScalarField1D linear_evolve(const ScalarField1D& f0, double t, const PhysParams& p);
ScalarField2D linear_evolve(const ScalarField2D& f0, double t, const PhysParams& p);

// Spectral interpolation onto the doubled grid (2n nodes, same length).
ScalarField1D resample_double(const ScalarField1D& f);

struct FieldNorms {
    double linf = 0.0;
    double l1 = 0.0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double max_slope = 0.0;
};

FieldNorms norms(const ScalarField1D& f);
FieldNorms norms(const ScalarField2D& f);

}  // namespace muskat
