#include "muskat/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace muskat {

ScalarField1D make_field(const GridSpec1D& grid) {
    return ScalarField1D{grid, std::vector<double>(static_cast<size_t>(grid.n), 0.0)};
}

ScalarField2D make_field(const GridSpec2D& grid) {
    return ScalarField2D{
        grid, std::vector<double>(static_cast<size_t>(grid.n1) * grid.n2, 0.0)};
}

void validate_finite(const ScalarField1D& f, const char* where) {
    if (static_cast<int>(f.samples.size()) != f.grid.n)
        throw DomainViolation(std::string(where) + ": sample count does not match grid");
    for (double v : f.samples)
        if (!std::isfinite(v))
            throw DomainViolation(std::string(where) + ": field contains NaN or Inf");
}

void validate_finite(const ScalarField2D& f, const char* where) {
    if (f.samples.size() != static_cast<size_t>(f.grid.n1) * f.grid.n2)
        throw DomainViolation(std::string(where) + ": sample count does not match grid");
    for (double v : f.samples)
        if (!std::isfinite(v))
            throw DomainViolation(std::string(where) + ": field contains NaN or Inf");
}

void validate_line_decay(const ScalarField1D& f, double tol) {
    if (f.grid.kind != DomainKind::TruncatedLine)
        throw DomainViolation("validate_line_decay: grid is not TruncatedLine");
    const int margin = std::max(1, f.grid.n / 20);  // outer 5% on each side
    double worst = 0.0;
    for (int j = 0; j < margin; ++j) {
        worst = std::max(worst, std::abs(f.samples[j]));
        worst = std::max(worst, std::abs(f.samples[f.grid.n - 1 - j]));
    }
    if (worst > tol)
        throw DomainViolation("TruncatedLine data does not decay near the boundary (|f|=" +
                              std::to_string(worst) + " in the outer 5%)");
}

}  // namespace muskat
