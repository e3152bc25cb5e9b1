#pragma once

#include <cmath>
#include <numbers>

#include "muskat/errors.hpp"

namespace muskat {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class DomainKind { PeriodicTorus, TruncatedLine };

// Uniform 1-D grid. Node j sits at x = j * spacing, j in [0, n).
struct GridSpec1D {
    int n = 0;
    double length = 0.0;
    double spacing = 0.0;
    DomainKind kind = DomainKind::PeriodicTorus;

    double node(int j) const { return j * spacing; }
    int wrap(int j) const {
        j %= n;
        return j < 0 ? j + n : j;
    }
    bool operator==(const GridSpec1D&) const = default;
};

// Uniform periodic 2-D grid, row-major samples: index(i1, i2) = i1*n2 + i2.
struct GridSpec2D {
    int n1 = 0, n2 = 0;
    double length1 = 0.0, length2 = 0.0;
    double spacing1 = 0.0, spacing2 = 0.0;

    int index(int i1, int i2) const { return i1 * n2 + i2; }
    int wrap1(int j) const {
        j %= n1;
        return j < 0 ? j + n1 : j;
    }
    int wrap2(int j) const {
        j %= n2;
        return j < 0 ? j + n2 : j;
    }
    bool operator==(const GridSpec2D&) const = default;
};

GridSpec1D make_grid(int n, double length, DomainKind kind);
GridSpec2D make_grid_2d(int n1, int n2, double length1, double length2);

}  // namespace muskat
