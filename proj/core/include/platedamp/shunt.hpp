#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "platedamp/ritz.hpp"

namespace platedamp {

using cplx = std::complex<double>;

/// Numerical stand-ins for the ideal circuit limits.
inline constexpr double kShortCircuitOhm = 1e-3;
inline constexpr double kOpenCircuitOhm = 1e9;

/// Load impedance of one shunt branch.
class ImpedanceLaw {
public:
    enum class Kind { resistor, series_rl, open, short_circuit };

    static ImpedanceLaw resistor(double ohms);
    static ImpedanceLaw series_rl(double ohms, double henries);
    static ImpedanceLaw open();
    static ImpedanceLaw short_circuit();

    Kind kind() const { return kind_; }
    double resistance() const { return resistance_; }
    double inductance() const { return inductance_; }

    cplx impedance(double omega) const;
    /// 1/Z(omega). Throws NumericalError for an exactly zero impedance.
    cplx admittance(double omega) const;

    bool operator==(const ImpedanceLaw&) const = default;

private:
    ImpedanceLaw(Kind kind, double r, double l) : kind_(kind), resistance_(r), inductance_(l) {}
    Kind kind_ = Kind::open;
    double resistance_ = 0.0;
    double inductance_ = 0.0;
};

/// Separated: one load per patch, each patch on its own circuit.
/// Connected: all positive electrodes tied to one node driving one load.
struct ShuntTopology {
    enum class Mode { separated, connected };

    Mode mode = Mode::separated;
    std::vector<ImpedanceLaw> loads;

    static ShuntTopology separated(std::vector<ImpedanceLaw> loads);
    static ShuntTopology separated_uniform(std::size_t patches, ImpedanceLaw load);
    static ShuntTopology connected(ImpedanceLaw load);

    std::string label() const { return mode == Mode::separated ? "separated" : "connected"; }
};

struct ForceSpec {
    double amplitude = 1.0;   // [N]
    Point location;
};

/// Harmonic response at the target point. Amplitudes are for the force
/// amplitude of the run, so a 1 N force gives values per newton.
struct FrfResult {
    std::vector<double> frequencies_hz;
    std::vector<cplx> displacement;   // [m]
    std::vector<cplx> velocity;       // [m/s]
    Eigen::MatrixXcd voltages;        // frequency x patch [V]
};

struct FrfOptions {
    /// Number of modes kept in every modal sum. Defaults to
    /// retained_mode_count() for the grid.
    std::optional<Eigen::Index> mode_limit;
};

/// Modes with omega_m <= 4 * (2 pi top_hz), but at least 25 (or all when
/// fewer exist).
Eigen::Index retained_mode_count(const ModalModel& model, double top_hz);

struct CircuitSystem {
    Eigen::MatrixXcd a;
    Eigen::VectorXcd b;
};

/// Patch-voltage equations A V = b of the separated topology at `omega`:
///   A_ls = delta_ls (1/Z_l + j omega C_l) + j omega sum_m theta_ml theta_ms G_m
///   b_l  = -j omega sum_m F0 psi_m(x0, y0) theta_ml G_m
/// with G_m = 1 / (omega_m^2 - omega^2 + 2 j xi_m omega_m omega).
CircuitSystem assemble_circuit_system(double omega, const ModalModel& model, const ShuntTopology& topology,
                                      const ForceSpec& force, std::optional<Eigen::Index> mode_limit = {});

/// LU solve of A V = b. Throws NumericalError when A is singular or the
/// residual exceeds 1e-10 |b|.
Eigen::VectorXcd solve_voltages(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b);

struct PointResponse {
    cplx displacement;
    Eigen::VectorXcd voltages;   // one entry per patch
};

/// Single-frequency evaluator with the force and target mode values cached.
class ResponseEngine {
public:
    ResponseEngine(const ModalModel& model, const ForceSpec& force, Point target, Eigen::Index modes);

    CircuitSystem circuit_system(double omega, const std::vector<ImpedanceLaw>& loads) const;
    PointResponse separated(double omega, const std::vector<ImpedanceLaw>& loads) const;
    PointResponse connected(double omega, const ImpedanceLaw& load) const;
    PointResponse mechanical(double omega) const;
    PointResponse evaluate(double omega, const ShuntTopology& topology) const;

    Eigen::Index modes() const { return modes_; }

private:
    Eigen::VectorXcd modal_gain(double omega) const;

    const ModalModel& model_;
    Eigen::Index modes_;
    Eigen::VectorXd modal_force_;   // F0 psi_m(x0, y0)
    Eigen::VectorXd target_shape_;  // psi_m(x, y)
    Eigen::MatrixXd theta_;         // modes x patches, truncated
    Eigen::VectorXd theta_sum_;     // summed over patches
};

FrfResult frf_separated(const ModalModel& model, const ShuntTopology& topology, const ForceSpec& force,
                        Point target, const std::vector<double>& grid_hz, const FrfOptions& options = {});

FrfResult frf_connected(const ModalModel& model, const ShuntTopology& topology, const ForceSpec& force,
                        Point target, const std::vector<double>& grid_hz, const FrfOptions& options = {});

/// Purely mechanical response with every coupling term dropped.
FrfResult frf_mechanical(const ModalModel& model, const ForceSpec& force, Point target,
                         const std::vector<double>& grid_hz, const FrfOptions& options = {});

/// Dispatches on topology.mode.
FrfResult frf(const ModalModel& model, const ShuntTopology& topology, const ForceSpec& force, Point target,
              const std::vector<double>& grid_hz, const FrfOptions& options = {});

std::vector<double> linear_grid(double start_hz, double stop_hz, std::size_t count);

}  // namespace platedamp
