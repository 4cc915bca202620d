#pragma once

#include <optional>
#include <span>
#include <vector>

namespace platedamp {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned rectangle [x1, x2) x [y1, y2). Lower/left edges belong to
/// the rectangle, upper/right edges do not.
struct Rect {
    double x1 = 0.0;
    double x2 = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;

    double area() const { return (x2 - x1) * (y2 - y1); }
    Point center() const { return {0.5 * (x1 + x2), 0.5 * (y1 + y2)}; }
    bool contains(Point p) const { return p.x >= x1 && p.x < x2 && p.y >= y1 && p.y < y2; }
    bool interiors_overlap(const Rect& o) const {
        return x1 < o.x2 && o.x1 < x2 && y1 < o.y2 && o.y1 < y2;
    }
};

/// Isotropic host plate, clamped on all four edges.
struct PlateSpec {
    double length_a = 0.0;   // x-extent [m]
    double width_b = 0.0;    // y-extent [m]
    double thickness_hs = 0.0;
    double youngs_Ys = 0.0;
    double poisson_nus = 0.0;
    double density_rhos = 0.0;
    double modal_damping_xi = 0.0;

    /// Bending modulus of the host layer, Y/(1 - nu^2).
    double plane_stress_modulus() const { return youngs_Ys / (1.0 - poisson_nus * poisson_nus); }
    bool contains(Point p) const { return p.x >= 0.0 && p.x <= length_a && p.y >= 0.0 && p.y <= width_b; }
};

/// One surface-bonded piezoelectric patch with full-footprint electrodes.
struct PatchSpec {
    double c11_bar = 0.0;
    double c12_bar = 0.0;
    double c66_bar = 0.0;
    double e31_bar = 0.0;   // [C/m^2], signed
    double eps33_s = 0.0;   // [F/m]
    double density_rhop = 0.0;
    double thickness_hp = 0.0;
    Rect footprint;

    /// Reduced moduli of an isotropic ceramic from its Young's modulus and
    /// Poisson ratio: c11 = Y/(1-nu^2), c12 = nu c11, c66 = Y/(2(1+nu)).
    static PatchSpec from_isotropic(double youngs, double poisson, double e31, double eps33,
                                    double density, double thickness, Rect footprint);

    /// Plane-stress piezoelectric stress constant from the strain constant
    /// d31 [m/V]: e31_bar = d31 (c11_bar + c12_bar), i.e. d31 Y/(1-nu) for an
    /// isotropic ceramic.
    static double e31_from_d31(double d31, double c11_bar, double c12_bar);
};

/// Bending rigidities of one patched region, all about the same shifted
/// neutral surface z0.
struct RigiditySet {
    double Ds = 0.0;    // bare host plate
    double Dsp = 0.0;   // host layer under the patch
    double D11p = 0.0;
    double D12p = 0.0;
    double D66p = 0.0;
    double z0 = 0.0;    // neutral-surface offset from host mid-plane
};

/// Throws DomainError if the plate constants are out of range.
void validate(const PlateSpec& plate);
/// Throws DomainError if the patch is invalid or does not fit on the plate.
void validate(const PlateSpec& plate, const PatchSpec& patch);
/// Validates every patch and checks that footprints are pairwise disjoint.
void validate(const PlateSpec& plate, std::span<const PatchSpec> patches);

/// Index of the patch covering `p`, or nullopt over bare plate. Throws
/// DomainError when `p` lies outside the plate.
std::optional<std::size_t> patch_coverage(Point p, const PlateSpec& plate,
                                          std::span<const PatchSpec> patches);

double neutral_axis_offset(const PlateSpec& plate, const PatchSpec& patch);

/// Mass per unit area at `p`: rho_s h_s + rho_p h_p P(x, y).
double effective_mass_density(Point p, const PlateSpec& plate, std::span<const PatchSpec> patches);

double bare_rigidity(const PlateSpec& plate);
RigiditySet rigidities(const PlateSpec& plate, const PatchSpec& patch);

}  // namespace platedamp
