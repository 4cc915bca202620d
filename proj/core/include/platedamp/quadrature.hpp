#pragma once

#include <span>
#include <vector>

namespace platedamp {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int order);

/// Composite Gauss-Legendre rule on [0, length]. The axis is cut at every
/// breakpoint, then each piece is split into cells no wider than max_cell.
/// No cell straddles a breakpoint.
struct AxisQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;

    static AxisQuadrature build(double length, std::span<const double> breakpoints, double max_cell,
                                int order);

    /// Half-open index range [first, last) of nodes lying in [lo, hi]. `lo`
    /// and `hi` must be breakpoints for the range to be exact.
    std::pair<std::size_t, std::size_t> range(double lo, double hi) const;
};

}  // namespace platedamp
