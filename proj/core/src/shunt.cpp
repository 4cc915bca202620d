#include "platedamp/shunt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "platedamp/errors.hpp"
#include "platedamp/parallel.hpp"

namespace platedamp {

namespace {

constexpr cplx j{0.0, 1.0};
constexpr double two_pi = 2.0 * std::numbers::pi;

void check_omega(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("excitation frequency must be > 0");
}

}  // namespace

ImpedanceLaw ImpedanceLaw::resistor(double ohms) {
    if (!(ohms >= 0.0) || !std::isfinite(ohms)) throw DomainError("resistance must be finite and >= 0");
    return {Kind::resistor, ohms, 0.0};
}

ImpedanceLaw ImpedanceLaw::series_rl(double ohms, double henries) {
    if (!(ohms >= 0.0) || !std::isfinite(ohms)) throw DomainError("resistance must be finite and >= 0");
    if (!(henries >= 0.0) || !std::isfinite(henries)) throw DomainError("inductance must be finite and >= 0");
    return {Kind::series_rl, ohms, henries};
}

ImpedanceLaw ImpedanceLaw::open() { return {Kind::open, kOpenCircuitOhm, 0.0}; }

ImpedanceLaw ImpedanceLaw::short_circuit() { return {Kind::short_circuit, kShortCircuitOhm, 0.0}; }

cplx ImpedanceLaw::impedance(double omega) const {
    switch (kind_) {
        case Kind::open:
            return kOpenCircuitOhm;
        case Kind::short_circuit:
            return kShortCircuitOhm;
        case Kind::series_rl:
            return {resistance_, omega * inductance_};
        default:
            return resistance_;
    }
}

cplx ImpedanceLaw::admittance(double omega) const {
    const cplx z = impedance(omega);
    if (std::abs(z) == 0.0) throw NumericalError("shunt-response", "zero load impedance");
    return 1.0 / z;
}

ShuntTopology ShuntTopology::separated(std::vector<ImpedanceLaw> loads) {
    return {Mode::separated, std::move(loads)};
}

ShuntTopology ShuntTopology::separated_uniform(std::size_t patches, ImpedanceLaw load) {
    return {Mode::separated, std::vector<ImpedanceLaw>(patches, load)};
}

ShuntTopology ShuntTopology::connected(ImpedanceLaw load) { return {Mode::connected, {load}}; }

Eigen::Index retained_mode_count(const ModalModel& model, double top_hz) {
    const double limit = 4.0 * two_pi * top_hz;
    Eigen::Index count = 0;
    while (count < model.mode_count() && model.frequencies(count) <= limit) ++count;
    return std::min(model.mode_count(), std::max<Eigen::Index>(count, 25));
}

ResponseEngine::ResponseEngine(const ModalModel& model, const ForceSpec& force, Point target,
                               Eigen::Index modes)
    : model_(model), modes_(std::clamp<Eigen::Index>(modes, 1, model.mode_count())) {
    if (model.coupling.rows() != model.mode_count() || model.coupling.cols() != model.patch_count())
        throw DomainError("modal model has no coupling attached");
    modal_force_ = force.amplitude * mode_values(model, force.location).head(modes_);
    target_shape_ = mode_values(model, target).head(modes_);
    theta_ = model.coupling.topRows(modes_);
    theta_sum_ = theta_.rowwise().sum();
}

Eigen::VectorXcd ResponseEngine::modal_gain(double omega) const {
    Eigen::VectorXcd g(modes_);
    for (Eigen::Index m = 0; m < modes_; ++m) {
        const double wm = model_.frequencies(m);
        g(m) = 1.0 / cplx(wm * wm - omega * omega, 2.0 * model_.damping_ratios(m) * wm * omega);
    }
    return g;
}

CircuitSystem ResponseEngine::circuit_system(double omega, const std::vector<ImpedanceLaw>& loads) const {
    check_omega(omega);
    const Eigen::Index patches = theta_.cols();
    if (static_cast<Eigen::Index>(loads.size()) != patches)
        throw DomainError("separated topology needs one load per patch");
    const Eigen::VectorXcd g = modal_gain(omega);
    const Eigen::MatrixXcd weighted = g.asDiagonal() * theta_.cast<cplx>();

    CircuitSystem sys;
    sys.a = (j * omega) * (theta_.transpose().cast<cplx>() * weighted);
    // Exact symmetry of the modal sum.
    sys.a = (0.5 * (sys.a + sys.a.transpose())).eval();
    for (Eigen::Index k = 0; k < patches; ++k) {
        sys.a(k, k) += loads[static_cast<std::size_t>(k)].admittance(omega) +
                       j * omega * model_.capacitances(k);
    }
    sys.b = (-j * omega) * (weighted.transpose() * modal_force_.cast<cplx>());
    return sys;
}

PointResponse ResponseEngine::separated(double omega, const std::vector<ImpedanceLaw>& loads) const {
    const CircuitSystem sys = circuit_system(omega, loads);
    PointResponse out;
    out.voltages = solve_voltages(sys.a, sys.b);
    const Eigen::VectorXcd g = modal_gain(omega);
    const Eigen::VectorXcd forcing = modal_force_.cast<cplx>() + theta_.cast<cplx>() * out.voltages;
    out.displacement = target_shape_.cast<cplx>().dot(g.cwiseProduct(forcing));
    return out;
}

PointResponse ResponseEngine::connected(double omega, const ImpedanceLaw& load) const {
    check_omega(omega);
    const Eigen::VectorXcd g = modal_gain(omega);
    cplx self{0.0, 0.0};
    cplx drive{0.0, 0.0};
    for (Eigen::Index m = 0; m < modes_; ++m) {
        self += theta_sum_(m) * theta_sum_(m) * g(m);
        drive += modal_force_(m) * theta_sum_(m) * g(m);
    }
    const cplx lhs = load.admittance(omega) + j * omega * model_.capacitances.sum() + j * omega * self;
    if (std::abs(lhs) == 0.0) throw NumericalError("shunt-response", "degenerate connected circuit equation");
    const cplx v = -j * omega * drive / lhs;

    PointResponse out;
    out.voltages = Eigen::VectorXcd::Constant(theta_.cols(), v);
    cplx w{0.0, 0.0};
    for (Eigen::Index m = 0; m < modes_; ++m) w += target_shape_(m) * g(m) * (modal_force_(m) + theta_sum_(m) * v);
    out.displacement = w;
    return out;
}

PointResponse ResponseEngine::mechanical(double omega) const {
    check_omega(omega);
    const Eigen::VectorXcd g = modal_gain(omega);
    PointResponse out;
    out.voltages = Eigen::VectorXcd::Zero(theta_.cols());
    out.displacement = target_shape_.cast<cplx>().dot(g.cwiseProduct(modal_force_.cast<cplx>()));
    return out;
}

PointResponse ResponseEngine::evaluate(double omega, const ShuntTopology& topology) const {
    if (topology.mode == ShuntTopology::Mode::connected) {
        if (topology.loads.size() != 1) throw DomainError("connected topology needs exactly one load");
        return connected(omega, topology.loads.front());
    }
    return separated(omega, topology.loads);
}

CircuitSystem assemble_circuit_system(double omega, const ModalModel& model, const ShuntTopology& topology,
                                      const ForceSpec& force, std::optional<Eigen::Index> mode_limit) {
    if (topology.mode != ShuntTopology::Mode::separated)
        throw DomainError("circuit matrix is defined for the separated topology");
    const Eigen::Index modes = mode_limit.value_or(retained_mode_count(model, omega / two_pi));
    const ResponseEngine engine(model, force, force.location, modes);
    return engine.circuit_system(omega, topology.loads);
}

Eigen::VectorXcd solve_voltages(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b) {
    if (a.rows() != a.cols() || a.rows() != b.size()) throw DomainError("circuit system has mismatched sizes");
    if (b.size() == 0) return {};
    const double bnorm = b.norm();
    if (bnorm == 0.0) return Eigen::VectorXcd::Zero(b.size());

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double rc = lu.rcond();
    if (!(rc > 1e3 * std::numeric_limits<double>::epsilon()))
        throw NumericalError("shunt-response", "singular circuit matrix (topology or frequency degeneracy)");
    Eigen::VectorXcd v = lu.solve(b);
    if (!v.allFinite() || (a * v - b).norm() > 1e-10 * bnorm)
        throw NumericalError("shunt-response", "circuit solve residual exceeds tolerance");
    return v;
}

namespace {

FrfResult run_grid(const ModalModel& model, const ForceSpec& force, Point target,
                   const std::vector<double>& grid_hz, const FrfOptions& options,
                   const std::function<PointResponse(const ResponseEngine&, double)>& point) {
    if (grid_hz.empty()) throw DomainError("frequency grid is empty");
    const double top = *std::max_element(grid_hz.begin(), grid_hz.end());
    const Eigen::Index modes = options.mode_limit.value_or(retained_mode_count(model, top));
    const ResponseEngine engine(model, force, target, modes);

    const std::size_t n = grid_hz.size();
    FrfResult out;
    out.frequencies_hz = grid_hz;
    out.displacement.resize(n);
    out.velocity.resize(n);
    out.voltages.resize(static_cast<Eigen::Index>(n), model.patch_count());
    parallel_for(n, [&](std::size_t i) {
        const double omega = two_pi * grid_hz[i];
        const PointResponse r = point(engine, omega);
        out.displacement[i] = r.displacement;
        out.velocity[i] = j * omega * r.displacement;
        out.voltages.row(static_cast<Eigen::Index>(i)) = r.voltages.transpose();
    });
    return out;
}

}  // namespace

FrfResult frf_separated(const ModalModel& model, const ShuntTopology& topology, const ForceSpec& force,
                        Point target, const std::vector<double>& grid_hz, const FrfOptions& options) {
    if (topology.mode != ShuntTopology::Mode::separated) throw DomainError("expected separated topology");
    if (static_cast<Eigen::Index>(topology.loads.size()) != model.patch_count())
        throw DomainError("separated topology needs one load per patch");
    return run_grid(model, force, target, grid_hz, options,
                    [&](const ResponseEngine& e, double omega) { return e.separated(omega, topology.loads); });
}

FrfResult frf_connected(const ModalModel& model, const ShuntTopology& topology, const ForceSpec& force,
                        Point target, const std::vector<double>& grid_hz, const FrfOptions& options) {
    if (topology.mode != ShuntTopology::Mode::connected || topology.loads.size() != 1)
        throw DomainError("expected connected topology with one load");
    return run_grid(model, force, target, grid_hz, options,
                    [&](const ResponseEngine& e, double omega) { return e.connected(omega, topology.loads[0]); });
}

FrfResult frf_mechanical(const ModalModel& model, const ForceSpec& force, Point target,
                         const std::vector<double>& grid_hz, const FrfOptions& options) {
    return run_grid(model, force, target, grid_hz, options,
                    [](const ResponseEngine& e, double omega) { return e.mechanical(omega); });
}

FrfResult frf(const ModalModel& model, const ShuntTopology& topology, const ForceSpec& force, Point target,
              const std::vector<double>& grid_hz, const FrfOptions& options) {
    if (topology.mode == ShuntTopology::Mode::connected)
        return frf_connected(model, topology, force, target, grid_hz, options);
    return frf_separated(model, topology, force, target, grid_hz, options);
}

std::vector<double> linear_grid(double start_hz, double stop_hz, std::size_t count) {
    if (count < 2) throw DomainError("grid count must be >= 2");
    if (!(start_hz > 0.0) || !(stop_hz > start_hz)) throw DomainError("grid must satisfy 0 < start < stop");
    std::vector<double> grid(count);
    const double step = (stop_hz - start_hz) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start_hz + step * static_cast<double>(i);
    grid.back() = stop_hz;
    return grid;
}

}  // namespace platedamp
