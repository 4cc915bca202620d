#include "platedamp/plate_model.hpp"

#include <cmath>
#include <string>

#include "platedamp/errors.hpp"

namespace platedamp {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Layer integral of z^2 over the patch thickness, measured from the shifted
// neutral surface: hp^3/3 + hs^2 hp/4 + hs hp^2/2 - z0 (hp hs + hp^2) + z0^2 hp.
double patch_second_moment(double hs, double hp, double z0) {
    return hp * hp * hp / 3.0 + hs * hs * hp / 4.0 + hs * hp * hp / 2.0 - z0 * (hp * hs + hp * hp) +
           z0 * z0 * hp;
}

}  // namespace

PatchSpec PatchSpec::from_isotropic(double youngs, double poisson, double e31, double eps33,
                                    double density, double thickness, Rect footprint) {
    PatchSpec p;
    p.c11_bar = youngs / (1.0 - poisson * poisson);
    p.c12_bar = poisson * p.c11_bar;
    p.c66_bar = youngs / (2.0 * (1.0 + poisson));
    p.e31_bar = e31;
    p.eps33_s = eps33;
    p.density_rhop = density;
    p.thickness_hp = thickness;
    p.footprint = footprint;
    return p;
}

double PatchSpec::e31_from_d31(double d31, double c11_bar, double c12_bar) {
    return d31 * (c11_bar + c12_bar);
}

void validate(const PlateSpec& plate) {
    if (!positive_finite(plate.length_a)) throw DomainError("plate.length_a must be > 0");
    if (!positive_finite(plate.width_b)) throw DomainError("plate.width_b must be > 0");
    if (!positive_finite(plate.thickness_hs)) throw DomainError("plate.thickness_hs must be > 0");
    if (!positive_finite(plate.youngs_Ys)) throw DomainError("plate.youngs_Ys must be > 0");
    if (!positive_finite(plate.density_rhos)) throw DomainError("plate.density_rhos must be > 0");
    if (!(plate.poisson_nus > 0.0 && plate.poisson_nus < 0.5))
        throw DomainError("plate.poisson_nus must lie in (0, 0.5)");
    if (!(plate.modal_damping_xi >= 0.0 && plate.modal_damping_xi < 1.0))
        throw DomainError("plate.modal_damping_xi must lie in [0, 1)");
}

void validate(const PlateSpec& plate, const PatchSpec& patch) {
    const Rect& r = patch.footprint;
    if (!(r.x1 >= 0.0 && r.x1 < r.x2 && r.x2 <= plate.length_a))
        throw DomainError("footprint x-range must satisfy 0 <= x1 < x2 <= length_a");
    if (!(r.y1 >= 0.0 && r.y1 < r.y2 && r.y2 <= plate.width_b))
        throw DomainError("footprint y-range must satisfy 0 <= y1 < y2 <= width_b");
    if (!(std::isfinite(patch.c11_bar) && patch.c11_bar > std::abs(patch.c12_bar)))
        throw DomainError("patch moduli must satisfy c11_bar > |c12_bar|");
    if (!positive_finite(patch.c66_bar)) throw DomainError("c66_bar must be > 0");
    if (!positive_finite(patch.eps33_s)) throw DomainError("eps33_s must be > 0");
    if (!std::isfinite(patch.e31_bar)) throw DomainError("e31_bar must be finite");
    if (!(std::isfinite(patch.density_rhop) && patch.density_rhop >= 0.0))
        throw DomainError("density_rhop must be >= 0");
    if (!(std::isfinite(patch.thickness_hp) && patch.thickness_hp >= 0.0))
        throw DomainError("thickness_hp must be >= 0");
}

void validate(const PlateSpec& plate, std::span<const PatchSpec> patches) {
    validate(plate);
    for (std::size_t i = 0; i < patches.size(); ++i) {
        try {
            validate(plate, patches[i]);
        } catch (const DomainError& e) {
            throw DomainError("patch " + std::to_string(i) + ": " + e.what());
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (patches[i].footprint.interiors_overlap(patches[j].footprint))
                throw DomainError("patch " + std::to_string(i) + " overlaps patch " + std::to_string(j));
        }
    }
}

std::optional<std::size_t> patch_coverage(Point p, const PlateSpec& plate,
                                          std::span<const PatchSpec> patches) {
    if (!plate.contains(p)) throw DomainError("point lies outside the plate");
    for (std::size_t i = 0; i < patches.size(); ++i) {
        if (patches[i].footprint.contains(p)) return i;
    }
    return std::nullopt;
}

double neutral_axis_offset(const PlateSpec& plate, const PatchSpec& patch) {
    const double hs = plate.thickness_hs;
    const double hp = patch.thickness_hp;
    const double patch_stiffness = patch.c11_bar * hp;
    return patch_stiffness * (hs + hp) / (2.0 * (plate.plane_stress_modulus() * hs + patch_stiffness));
}

double effective_mass_density(Point p, const PlateSpec& plate, std::span<const PatchSpec> patches) {
    const double host = plate.density_rhos * plate.thickness_hs;
    if (auto k = patch_coverage(p, plate, patches)) {
        return host + patches[*k].density_rhop * patches[*k].thickness_hp;
    }
    return host;
}

double bare_rigidity(const PlateSpec& plate) {
    const double hs = plate.thickness_hs;
    return plate.plane_stress_modulus() * hs * hs * hs / 12.0;
}

RigiditySet rigidities(const PlateSpec& plate, const PatchSpec& patch) {
    RigiditySet r;
    const double hs = plate.thickness_hs;
    const double hp = patch.thickness_hp;
    r.z0 = neutral_axis_offset(plate, patch);
    r.Ds = bare_rigidity(plate);
    // Host term under the patch carries the parallel-axis shift z0^2 hp.
    r.Dsp = plate.plane_stress_modulus() * (hs * hs * hs / 12.0 + r.z0 * r.z0 * hp);
    const double moment = patch_second_moment(hs, hp, r.z0);
    r.D11p = patch.c11_bar * moment;
    r.D12p = patch.c12_bar * moment;
    r.D66p = patch.c66_bar * moment;
    return r;
}

}  // namespace platedamp
