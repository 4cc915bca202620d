#include "platedamp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "platedamp/errors.hpp"

namespace platedamp {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw DomainError("quadrature order must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(order, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(order, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

AxisQuadrature AxisQuadrature::build(double length, std::span<const double> breakpoints, double max_cell,
                                     int order) {
    if (!(length > 0.0) || !(max_cell > 0.0)) throw DomainError("invalid axis quadrature extent");
    std::vector<double> cuts{0.0, length};
    for (double b : breakpoints) {
        if (b > 0.0 && b < length) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const QuadratureRule rule = gauss_legendre(order);
    AxisQuadrature q;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s];
        const double hi = cuts[s + 1];
        const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_cell)));
        const double h = (hi - lo) / cells;
        for (int c = 0; c < cells; ++c) {
            const double a = lo + c * h;
            const double b = (c + 1 == cells) ? hi : a + h;
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (a + b);
            for (int k = 0; k < order; ++k) {
                q.nodes.push_back(mid + half * rule.nodes[k]);
                q.weights.push_back(half * rule.weights[k]);
            }
        }
    }
    return q;
}

std::pair<std::size_t, std::size_t> AxisQuadrature::range(double lo, double hi) const {
    const auto first = std::lower_bound(nodes.begin(), nodes.end(), lo);
    const auto last = std::upper_bound(nodes.begin(), nodes.end(), hi);
    return {static_cast<std::size_t>(first - nodes.begin()), static_cast<std::size_t>(last - nodes.begin())};
}

}  // namespace platedamp
