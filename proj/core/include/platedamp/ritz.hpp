#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "platedamp/plate_model.hpp"

namespace platedamp {

/// Tensor-product basis W_ij(x, y) = X_i(x) Y_j(y) of clamped-clamped beam
/// functions. Trial function (i, j) (1-based) sits at flat index
/// (i-1) * n_y + (j-1).
struct BasisSpec {
    int n_x = 10;
    int n_y = 10;
    int quadrature_order = 10;

    int size() const { return n_x * n_y; }
    int flat_index(int i, int j) const { return (i - 1) * n_y + (j - 1); }
};

void validate(const BasisSpec& basis);

struct RitzSystem {
    Eigen::MatrixXd mass;
    Eigen::MatrixXd stiffness;
};

struct AssemblyOptions {
    /// Drop patch and neutral-axis stiffness while keeping patch mass.
    bool include_patch_stiffness = true;
    /// Scales the number of quadrature cells per axis.
    double cell_refinement = 1.0;
};

/// Mass and stiffness matrices of the plate plus patches in the beam basis.
///
/// Both integrands are separable within any rectangle of constant
/// coefficients, so every entry reduces to products of one-dimensional
/// Gauss-Legendre integrals over the plate and over each footprint. The
/// quadrature mesh is cut at every footprint edge.
///
/// Energy density in a region with coefficients (Da, Dc, Dt):
///   Da (w_xx^2 + w_yy^2) + 2 Dc w_xx w_yy + Dt w_xy^2
/// Bare host:       Da = Ds,           Dc = nu Ds,           Dt = 2 (1 - nu) Ds
/// Under a patch the host rigidity Ds is replaced by Dsp and the patch adds
///                  Da += D11p,        Dc += D12p,           Dt += 4 D66p
RitzSystem assemble_system(const PlateSpec& plate, std::span<const PatchSpec> patches,
                           const BasisSpec& basis, const AssemblyOptions& options = {});

/// Mass-normalized Ritz modes. Coupling and capacitance are filled by
/// attach_coupling().
struct ModalModel {
    PlateSpec plate;
    std::vector<PatchSpec> patches;
    BasisSpec basis;
    Eigen::VectorXd frequencies;     // rad/s, ascending
    Eigen::MatrixXd mode_coeffs;     // basis.size() x modes, column m is mode m
    Eigen::VectorXd damping_ratios;
    Eigen::MatrixXd coupling;        // modes x patches [N m / V]
    Eigen::VectorXd capacitances;    // per patch [F]

    Eigen::Index mode_count() const { return frequencies.size(); }
    Eigen::Index patch_count() const { return static_cast<Eigen::Index>(patches.size()); }
};

/// Generalized eigensolve K u = w^2 M u through a Cholesky factorization of
/// M. Each eigenvector is scaled to unit modal mass and signed so that its
/// largest-magnitude coefficient is positive.
ModalModel solve_modes(const Eigen::MatrixXd& mass, const Eigen::MatrixXd& stiffness, double damping_ratio);

/// Assemble, solve and attach coupling in one call.
ModalModel build_modal_model(const PlateSpec& plate, std::span<const PatchSpec> patches,
                             const BasisSpec& basis, const AssemblyOptions& options = {});

/// Values W_p(x, y) of every trial function at `p`.
Eigen::VectorXd basis_values(const BasisSpec& basis, double length_a, double width_b, Point p);

/// Mode shapes psi_m(x, y) at `p` for every retained mode.
Eigen::VectorXd mode_values(const ModalModel& model, Point p);

}  // namespace platedamp
