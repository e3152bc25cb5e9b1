#include "muskat/grid.hpp"

#include <string>

namespace muskat {

GridSpec1D make_grid(int n, double length, DomainKind kind) {
    if (n < 8) throw ConfigError("grid: n must be >= 8 (got " + std::to_string(n) + ")");
    if (n % 2 != 0) throw ConfigError("grid: n must be even (got " + std::to_string(n) + ")");
    if (!(length > 0.0)) throw ConfigError("grid: length must be positive");
    if (kind == DomainKind::TruncatedLine && length < 4.0 * std::numbers::pi)
        throw ConfigError("grid: TruncatedLine requires length >= 4*pi");
    GridSpec1D g;
    g.n = n;
    g.length = length;
    g.spacing = length / n;
    g.kind = kind;
    return g;
}

GridSpec2D make_grid_2d(int n1, int n2, double length1, double length2) {
    // Reuse the 1-D validation per axis; the 2-D domain is periodic only.
    const GridSpec1D a = make_grid(n1, length1, DomainKind::PeriodicTorus);
    const GridSpec1D b = make_grid(n2, length2, DomainKind::PeriodicTorus);
    GridSpec2D g;
    g.n1 = a.n;
    g.n2 = b.n;
    g.length1 = a.length;
    g.length2 = b.length;
    g.spacing1 = a.spacing;
    g.spacing2 = b.spacing;
    return g;
}

}  // namespace muskat
