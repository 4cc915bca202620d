#pragma once

#include <string>
#include <vector>

#include "platedamp/shunt.hpp"

namespace platedamp {

struct Band {
    double lo_hz = 0.0;
    double hi_hz = 0.0;
};

/// Log-spaced resistance sweep and the FRF window it minimizes over.
/// With several bands the objective is the largest peak among them.
struct SweepSpec {
    double r_min = 100.0;
    double r_max = 1e6;
    std::size_t points = 200;
    std::vector<Band> objective_bands;
};

void validate(const SweepSpec& sweep);
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// Everything a resistance search needs besides the resistances.
struct Scenario {
    const ModalModel* model = nullptr;
    ShuntTopology::Mode mode = ShuntTopology::Mode::separated;
    ForceSpec force;
    Point target;
    std::vector<double> grid_hz;
};

/// Peak |velocity| of the scenario under `topology`, maximized over each
/// band and then over bands. The band's grid points are scanned and the
/// largest one is refined by golden-section search between its neighbours.
/// Throws DomainError when a band holds no grid point.
double peak_objective(const Scenario& scenario, const ShuntTopology& topology, const std::vector<Band>& bands);

struct SweepResult {
    double r_opt = 0.0;
    double objective = 0.0;
    std::vector<double> resistances;
    std::vector<double> objectives;
};

/// Uniform sweep: every patch (or the single connected load) gets the same
/// candidate resistance. Returns the argmin; ties keep the lower resistance.
SweepResult sweep_resistance(const Scenario& scenario, const SweepSpec& sweep);

struct PerPatchResult {
    std::vector<double> resistances;
    double objective = 0.0;
    double uniform_objective = 0.0;
    /// Objective after each accepted coordinate update, starting with the
    /// uniform optimum.
    std::vector<double> history;
    int cycles = 0;
};

/// Cyclic coordinate descent over per-patch resistances, seeded with the
/// uniform optimum. Each coordinate is swept over the same log grid with the
/// others held fixed; a move is accepted only if it strictly lowers the
/// objective. Stops when a full cycle improves by < 0.1% or after 10 cycles.
PerPatchResult optimize_per_patch(const Scenario& scenario, const SweepSpec& sweep);

struct ModeReduction {
    std::size_t mode = 0;          // 1-based
    Band window;
    double oc_peak = 0.0;
    double oc_peak_hz = 0.0;
    double shunted_peak = 0.0;
    double shunted_peak_hz = 0.0;
    double percent = 0.0;
    bool flagged = false;          // no local maximum inside the window
    std::string note;
};

struct ReductionReport {
    std::string topology;
    std::vector<double> resistances;
    std::vector<ModeReduction> modes;
};

/// Per window, the largest |velocity| of each FRF, which must be a local
/// maximum strictly inside the window. Reduction = 100 (1 - shunted/oc).
/// Windows where either FRF peaks on the window edge are flagged.
ReductionReport percent_reduction(const FrfResult& frf_oc, const FrfResult& frf_shunted,
                                  const std::vector<Band>& windows);

/// Windows around the first `count` resonance peaks of `frf`, split at the
/// midpoints between neighbouring peaks.
std::vector<Band> resonance_windows(const FrfResult& frf, std::size_t count);

/// Separated-versus-connected comparison under the resistor-sweep protocol:
/// for each wiring, the open-circuit FRF fixes the resonance windows, the
/// uniform resistance is swept against the objective bands (the first
/// window when none are given), and the FRF at the optimum is compared with
/// the open-circuit FRF of the same wiring, mode by mode.
struct ComparisonSpec {
    ForceSpec force;
    Point target;
    std::vector<double> grid_hz;
    SweepSpec sweep;                 // empty objective_bands -> mode-1 window
    std::size_t reported_modes = 3;
};

struct TopologyOutcome {
    ShuntTopology::Mode mode = ShuntTopology::Mode::separated;
    std::vector<Band> windows;
    std::vector<Band> objective_bands;
    SweepResult sweep;
    FrfResult open_circuit;
    FrfResult shunted;
    ReductionReport reductions;
};

TopologyOutcome evaluate_topology(const ModalModel& model, ShuntTopology::Mode mode, const ComparisonSpec& spec);

struct Comparison {
    TopologyOutcome separated;
    TopologyOutcome connected;
};

Comparison compare_topologies(const ModalModel& model, const ComparisonSpec& spec);

}  // namespace platedamp
