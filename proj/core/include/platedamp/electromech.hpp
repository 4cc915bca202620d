#pragma once

#include <Eigen/Dense>

#include "platedamp/plate_model.hpp"
#include "platedamp/ritz.hpp"

namespace platedamp {

/// Blocked capacitance eps33 * area / h_p of a fully electroded patch.
/// Zero-area footprints give 0.
double patch_capacitance(const PatchSpec& patch);

/// Distance (h_p + h_s)/2 - z0 from the neutral surface to the patch
/// mid-plane.
double coupling_lever_arm(const PlateSpec& plate, const PatchSpec& patch);

/// Integral of the Laplacian of each trial function over `footprint`, in
/// closed form: [X_i']_{x1}^{x2} int Y_j dy + int X_i dx [Y_j']_{y1}^{y2}.
Eigen::VectorXd footprint_laplacian_integrals(const BasisSpec& basis, double length_a, double width_b,
                                              const Rect& footprint);

/// Coupling coefficient of every mode in `model` to patch `k`:
///   theta_m = -e31 ((h_p + h_s)/2 - z0) int_{S_p} lap(psi_m) dS.
/// Couples voltage into the modal force (-theta v) and modal velocity into
/// the patch current (i = -theta d(eta)/dt).
Eigen::VectorXd coupling_vector(const ModalModel& model, Eigen::Index k);

/// Fills model.coupling (modes x patches) and model.capacitances.
void attach_coupling(ModalModel& model);

}  // namespace platedamp
