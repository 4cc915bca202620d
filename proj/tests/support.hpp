#pragma once

#include <cmath>
#include <vector>

#include "platedamp/platedamp.hpp"

namespace testing {

// Host plate and PZT-5A patch constants of the bundled reference setup.
// The patch's -190 is its d31 in pC/N.
inline platedamp::PlateSpec table_plate() {
    return {0.54, 0.58, 0.0019, 70e9, 0.33, 2700.0, 0.01};
}

inline platedamp::PatchSpec table_patch(platedamp::Rect footprint, double thickness = 0.000267) {
    auto patch = platedamp::PatchSpec::from_isotropic(69e9, 0.31, 0.0, 9.57e-9, 7800.0, thickness, footprint);
    patch.e31_bar = platedamp::PatchSpec::e31_from_d31(-190e-12, patch.c11_bar, patch.c12_bar);
    return patch;
}

inline platedamp::Rect square_at(double x, double y, double side = 0.0724) {
    return {x, x + side, y, y + side};
}

// Three separated patches at asymmetric positions, used across suites.
inline std::vector<platedamp::PatchSpec> three_patches() {
    return {table_patch(square_at(0.12, 0.20)), table_patch(square_at(0.30, 0.34)),
            table_patch(square_at(0.36, 0.08))};
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

template <class C>
double rel_diff(const C& a, const C& b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing
