#include "platedamp/ritz.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "platedamp/beam_basis.hpp"
#include "platedamp/electromech.hpp"
#include "platedamp/errors.hpp"
#include "platedamp/quadrature.hpp"

namespace platedamp {

namespace {

struct IntervalIntegrals {
    Eigen::MatrixXd i00;   // int f_i f_k
    Eigen::MatrixXd i11;   // int f_i' f_k'
    Eigen::MatrixXd i22;   // int f_i'' f_k''
    Eigen::MatrixXd i02;   // int f_i f_k''
};

// Beam functions and derivatives tabulated on one axis' quadrature nodes.
class AxisTable {
public:
    AxisTable(int count, double length, std::span<const double> breakpoints, int order, double refinement)
        : length_(length) {
        const double top_root = clamped_beam_root(count);
        const int cells = std::max(4, static_cast<int>(std::ceil(top_root * refinement)));
        quad_ = AxisQuadrature::build(length, breakpoints, length / cells, order);
        const auto n = static_cast<Eigen::Index>(quad_.nodes.size());
        for (auto& v : values_) v.resize(count, n);
        for (int i = 0; i < count; ++i) {
            for (Eigen::Index q = 0; q < n; ++q) {
                for (int d = 0; d < 3; ++d) values_[d](i, q) = beam_basis_eval(i + 1, length, quad_.nodes[q], d);
            }
        }
    }

    IntervalIntegrals integrals(double lo, double hi) const {
        const auto [first, last] = quad_.range(lo, hi);
        const auto len = static_cast<Eigen::Index>(last - first);
        const auto start = static_cast<Eigen::Index>(first);
        const Eigen::Map<const Eigen::VectorXd> w(quad_.weights.data() + first, len);
        auto block = [&](int d) { return values_[d].middleCols(start, len); };
        IntervalIntegrals out;
        out.i00 = block(0) * w.asDiagonal() * block(0).transpose();
        out.i11 = block(1) * w.asDiagonal() * block(1).transpose();
        out.i22 = block(2) * w.asDiagonal() * block(2).transpose();
        out.i02 = block(0) * w.asDiagonal() * block(2).transpose();
        return out;
    }

    double length() const { return length_; }

private:
    double length_;
    AxisQuadrature quad_;
    std::array<Eigen::MatrixXd, 3> values_;
};

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

struct RegionCoefficients {
    double mass = 0.0;
    double da = 0.0;
    double dc = 0.0;
    double dt = 0.0;
};

void add_region(RitzSystem& sys, const IntervalIntegrals& x, const IntervalIntegrals& y,
                const RegionCoefficients& c) {
    sys.mass += c.mass * kron(x.i00, y.i00);
    sys.stiffness += c.da * (kron(x.i22, y.i00) + kron(x.i00, y.i22));
    sys.stiffness += c.dc * (kron(x.i02.transpose(), y.i02) + kron(x.i02, y.i02.transpose()));
    sys.stiffness += c.dt * kron(x.i11, y.i11);
}

}  // namespace

void validate(const BasisSpec& basis) {
    if (basis.n_x < 1 || basis.n_y < 1) throw DomainError("basis.n_x and basis.n_y must be >= 1");
    if (basis.quadrature_order < 2) throw DomainError("basis.quadrature_order must be >= 2");
}

RitzSystem assemble_system(const PlateSpec& plate, std::span<const PatchSpec> patches,
                           const BasisSpec& basis, const AssemblyOptions& options) {
    validate(plate, patches);
    validate(basis);

    std::vector<double> xcuts;
    std::vector<double> ycuts;
    for (const auto& p : patches) {
        xcuts.insert(xcuts.end(), {p.footprint.x1, p.footprint.x2});
        ycuts.insert(ycuts.end(), {p.footprint.y1, p.footprint.y2});
    }
    const AxisTable xt(basis.n_x, plate.length_a, xcuts, basis.quadrature_order, options.cell_refinement);
    const AxisTable yt(basis.n_y, plate.width_b, ycuts, basis.quadrature_order, options.cell_refinement);

    const auto n = static_cast<Eigen::Index>(basis.size());
    RitzSystem sys{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};

    const double nu = plate.poisson_nus;
    const double ds = bare_rigidity(plate);
    add_region(sys, xt.integrals(0.0, plate.length_a), yt.integrals(0.0, plate.width_b),
               {plate.density_rhos * plate.thickness_hs, ds, nu * ds, 2.0 * (1.0 - nu) * ds});

    for (const auto& p : patches) {
        RegionCoefficients c;
        c.mass = p.density_rhop * p.thickness_hp;
        if (options.include_patch_stiffness) {
            const RigiditySet r = rigidities(plate, p);
            const double host_shift = r.Dsp - r.Ds;
            c.da = host_shift + r.D11p;
            c.dc = nu * host_shift + r.D12p;
            c.dt = 2.0 * (1.0 - nu) * host_shift + 4.0 * r.D66p;
        }
        const Rect& f = p.footprint;
        add_region(sys, xt.integrals(f.x1, f.x2), yt.integrals(f.y1, f.y2), c);
    }

    sys.mass = 0.5 * (sys.mass + sys.mass.transpose()).eval();
    sys.stiffness = 0.5 * (sys.stiffness + sys.stiffness.transpose()).eval();
    return sys;
}

ModalModel solve_modes(const Eigen::MatrixXd& mass, const Eigen::MatrixXd& stiffness, double damping_ratio) {
    if (mass.rows() != mass.cols() || stiffness.rows() != stiffness.cols() || mass.rows() != stiffness.rows())
        throw DomainError("mass and stiffness must be square matrices of equal size");
    if (!mass.allFinite() || !stiffness.allFinite())
        throw NumericalError("ritz-solver", "mass or stiffness matrix contains non-finite entries");

    const Eigen::LLT<Eigen::MatrixXd> chol(mass);
    if (chol.info() != Eigen::Success)
        throw NumericalError("ritz-solver", "mass matrix is ill-conditioned (Cholesky factorization failed)");

    // C = L^{-1} K L^{-T}
    const auto lower = chol.matrixL();
    Eigen::MatrixXd c = lower.solve(stiffness);
    c = lower.solve(c.transpose()).transpose();
    c = 0.5 * (c + c.transpose()).eval();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
    if (eig.info() != Eigen::Success) throw NumericalError("ritz-solver", "symmetric eigensolve failed");

    ModalModel model;
    const Eigen::Index n = mass.rows();
    model.frequencies.resize(n);
    for (Eigen::Index m = 0; m < n; ++m) model.frequencies(m) = std::sqrt(std::max(0.0, eig.eigenvalues()(m)));

    model.mode_coeffs = chol.matrixU().solve(eig.eigenvectors());
    for (Eigen::Index m = 0; m < n; ++m) {
        auto col = model.mode_coeffs.col(m);
        const double modal_mass = col.dot(mass * col);
        col /= std::sqrt(modal_mass);
        Eigen::Index imax = 0;
        col.cwiseAbs().maxCoeff(&imax);
        if (col(imax) < 0.0) col = -col;
    }
    model.damping_ratios = Eigen::VectorXd::Constant(n, damping_ratio);
    return model;
}

ModalModel build_modal_model(const PlateSpec& plate, std::span<const PatchSpec> patches,
                             const BasisSpec& basis, const AssemblyOptions& options) {
    const RitzSystem sys = assemble_system(plate, patches, basis, options);
    ModalModel model = solve_modes(sys.mass, sys.stiffness, plate.modal_damping_xi);
    model.plate = plate;
    model.patches.assign(patches.begin(), patches.end());
    model.basis = basis;
    attach_coupling(model);
    return model;
}

Eigen::VectorXd basis_values(const BasisSpec& basis, double length_a, double width_b, Point p) {
    Eigen::VectorXd xv(basis.n_x);
    Eigen::VectorXd yv(basis.n_y);
    for (int i = 0; i < basis.n_x; ++i) xv(i) = beam_basis_eval(i + 1, length_a, p.x, 0);
    for (int j = 0; j < basis.n_y; ++j) yv(j) = beam_basis_eval(j + 1, width_b, p.y, 0);
    Eigen::VectorXd out(basis.size());
    for (int i = 0; i < basis.n_x; ++i) out.segment(i * basis.n_y, basis.n_y) = xv(i) * yv;
    return out;
}

Eigen::VectorXd mode_values(const ModalModel& model, Point p) {
    if (!model.plate.contains(p)) throw DomainError("point lies outside the plate");
    return model.mode_coeffs.transpose() *
           basis_values(model.basis, model.plate.length_a, model.plate.width_b, p);
}

}  // namespace platedamp
