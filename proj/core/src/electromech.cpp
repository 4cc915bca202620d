#include "platedamp/electromech.hpp"

#include "platedamp/beam_basis.hpp"
#include "platedamp/errors.hpp"

namespace platedamp {

double patch_capacitance(const PatchSpec& patch) {
    const double area = patch.footprint.area();
    if (area == 0.0) return 0.0;
    return patch.eps33_s * area / patch.thickness_hp;
}

double coupling_lever_arm(const PlateSpec& plate, const PatchSpec& patch) {
    return 0.5 * (patch.thickness_hp + plate.thickness_hs) - neutral_axis_offset(plate, patch);
}

Eigen::VectorXd footprint_laplacian_integrals(const BasisSpec& basis, double length_a, double width_b,
                                              const Rect& footprint) {
    Eigen::VectorXd slope_jump_x(basis.n_x);
    Eigen::VectorXd integral_x(basis.n_x);
    for (int i = 0; i < basis.n_x; ++i) {
        slope_jump_x(i) = beam_basis_eval(i + 1, length_a, footprint.x2, 1) -
                          beam_basis_eval(i + 1, length_a, footprint.x1, 1);
        integral_x(i) = beam_basis_antiderivative(i + 1, length_a, footprint.x2) -
                        beam_basis_antiderivative(i + 1, length_a, footprint.x1);
    }
    Eigen::VectorXd slope_jump_y(basis.n_y);
    Eigen::VectorXd integral_y(basis.n_y);
    for (int j = 0; j < basis.n_y; ++j) {
        slope_jump_y(j) = beam_basis_eval(j + 1, width_b, footprint.y2, 1) -
                          beam_basis_eval(j + 1, width_b, footprint.y1, 1);
        integral_y(j) = beam_basis_antiderivative(j + 1, width_b, footprint.y2) -
                        beam_basis_antiderivative(j + 1, width_b, footprint.y1);
    }
    Eigen::VectorXd out(basis.size());
    for (int i = 0; i < basis.n_x; ++i) {
        out.segment(i * basis.n_y, basis.n_y) = slope_jump_x(i) * integral_y + integral_x(i) * slope_jump_y;
    }
    return out;
}

Eigen::VectorXd coupling_vector(const ModalModel& model, Eigen::Index k) {
    if (k < 0 || k >= model.patch_count()) throw DomainError("patch index out of range");
    const PatchSpec& patch = model.patches[static_cast<std::size_t>(k)];
    const Eigen::VectorXd g = footprint_laplacian_integrals(model.basis, model.plate.length_a,
                                                            model.plate.width_b, patch.footprint);
    const double scale = -patch.e31_bar * coupling_lever_arm(model.plate, patch);
    return scale * (model.mode_coeffs.transpose() * g);
}

void attach_coupling(ModalModel& model) {
    const Eigen::Index patches = model.patch_count();
    model.coupling.resize(model.mode_count(), patches);
    model.capacitances.resize(patches);
    for (Eigen::Index k = 0; k < patches; ++k) {
        model.coupling.col(k) = coupling_vector(model, k);
        model.capacitances(k) = patch_capacitance(model.patches[static_cast<std::size_t>(k)]);
    }
}

}  // namespace platedamp
