#pragma once

#include <array>

#include "muskat/muskat1d.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

enum class SingularRule2D { PunctureCell, PolarPatch };

struct Quadrature2DConfig {
    int image_layers = 1;        // periodic image shells beyond the centered cell
    SingularRule2D singular_rule = SingularRule2D::PunctureCell;
    int polar_patch_rings = 8;   // angular resolution of the patch quadrature
    bool allow_large_grid = false;  // grids above 96^2 need an explicit opt-in

    void validate() const {
        if (image_layers < 0 || image_layers > 4)
            throw ConfigError("image_layers must be in [0, 4]");
        if (polar_patch_rings < 4)
            throw ConfigError("polar_patch_rings must be >= 4");
    }
};

struct VelocitySample {
    std::array<double, 3> position{};
    std::array<double, 3> velocity{};
};

// f_t of the 2-D interface equation, midpoint quadrature over the centered
// cell plus image_layers shells of periodic images.
ScalarField2D rhs_2d(const ScalarField2D& f, const PhysParams& p,
                     const Quadrature2DConfig& cfg = {});

// Extends f1d constantly in x2, evaluates rhs_2d and reports the L-inf gap
// against the broadcast 1-D right-hand side.
struct ReductionReport {
    double l_inf_gap = 0.0;
};
ReductionReport reduce_consistency(const ScalarField1D& f1d, const PhysParams& p,
                                   const Quadrature2DConfig& cfg2d,
                                   const Quadrature1DConfig& cfg1d = {});

// Off-interface 3-D velocity reconstruction.
std::vector<VelocitySample> velocity_field(const ScalarField2D& f, const PhysParams& p,
                                           const std::vector<std::array<double, 3>>& points,
                                           const Quadrature2DConfig& cfg = {});

// J1 integral of the 2-D extremum identity at the grid argmax.
ExtremumRhs rhs_2d_at_extremum(const ScalarField2D& f, const PhysParams& p,
                               const Quadrature2DConfig& cfg = {});

}  // namespace muskat
