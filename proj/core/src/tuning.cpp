#include "platedamp/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "platedamp/errors.hpp"
#include "platedamp/parallel.hpp"

namespace platedamp {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ShuntTopology uniform_topology(const Scenario& s, double ohms) {
    if (s.mode == ShuntTopology::Mode::connected) return ShuntTopology::connected(ImpedanceLaw::resistor(ohms));
    return ShuntTopology::separated_uniform(s.model->patches.size(), ImpedanceLaw::resistor(ohms));
}

ShuntTopology per_patch_topology(const std::vector<double>& ohms) {
    std::vector<ImpedanceLaw> loads;
    loads.reserve(ohms.size());
    for (double r : ohms) loads.push_back(ImpedanceLaw::resistor(r));
    return ShuntTopology::separated(std::move(loads));
}

void check_scenario(const Scenario& s) {
    if (s.model == nullptr) throw DomainError("scenario has no modal model");
    if (s.grid_hz.size() < 2) throw DomainError("scenario grid needs at least two points");
}

// Largest |velocity| in one band: grid scan, then golden-section refinement
// around the best grid point.
double band_peak(const ResponseEngine& engine, const ShuntTopology& topology, const std::vector<double>& grid,
                 const Band& band) {
    auto speed = [&](double hz) {
        const double omega = two_pi * hz;
        return omega * std::abs(engine.evaluate(omega, topology).displacement);
    };

    std::size_t best = grid.size();
    double best_value = -1.0;
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < band.lo_hz || grid[i] > band.hi_hz) continue;
        inside.push_back(i);
        const double v = speed(grid[i]);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    if (inside.empty()) throw DomainError("objective band contains no grid frequency");

    double lo = (best > 0 && grid[best - 1] >= band.lo_hz) ? grid[best - 1] : std::max(band.lo_hz, grid[best]);
    double hi = (best + 1 < grid.size() && grid[best + 1] <= band.hi_hz) ? grid[best + 1]
                                                                          : std::min(band.hi_hz, grid[best]);
    if (!(hi > lo)) return best_value;

    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = speed(c);
    double fd = speed(d);
    for (int it = 0; it < 80 && (hi - lo) > 1e-10 * hi; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = speed(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = speed(d);
        }
    }
    return std::max({best_value, fc, fd});
}

double objective_with(const ResponseEngine& engine, const Scenario& s, const ShuntTopology& topology,
                      const std::vector<Band>& bands) {
    if (bands.empty()) throw DomainError("objective needs at least one band");
    double worst = 0.0;
    for (const Band& b : bands) worst = std::max(worst, band_peak(engine, topology, s.grid_hz, b));
    return worst;
}

ResponseEngine make_engine(const Scenario& s) {
    const double top = *std::max_element(s.grid_hz.begin(), s.grid_hz.end());
    return ResponseEngine(*s.model, s.force, s.target, retained_mode_count(*s.model, top));
}

std::size_t argmin(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

void validate(const SweepSpec& sweep) {
    if (!(sweep.r_min > 0.0) || !(sweep.r_max > sweep.r_min) || !std::isfinite(sweep.r_max))
        throw DomainError("sweep must satisfy 0 < r_min < r_max");
    if (sweep.points < 2) throw DomainError("sweep.points must be >= 2");
    if (sweep.objective_bands.empty()) throw DomainError("sweep needs an objective band");
    for (const Band& b : sweep.objective_bands) {
        if (!(b.lo_hz < b.hi_hz)) throw DomainError("objective band must satisfy lo < hi");
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (points < 2 || !(lo > 0.0) || !(hi > lo)) throw DomainError("log grid needs 0 < lo < hi and >= 2 points");
    std::vector<double> out(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
    out.front() = lo;
    out.back() = hi;
    return out;
}

double peak_objective(const Scenario& scenario, const ShuntTopology& topology, const std::vector<Band>& bands) {
    check_scenario(scenario);
    return objective_with(make_engine(scenario), scenario, topology, bands);
}

SweepResult sweep_resistance(const Scenario& scenario, const SweepSpec& sweep) {
    check_scenario(scenario);
    validate(sweep);
    const ResponseEngine engine = make_engine(scenario);

    SweepResult out;
    out.resistances = log_grid(sweep.r_min, sweep.r_max, sweep.points);
    out.objectives.resize(out.resistances.size());
    parallel_for(out.resistances.size(), [&](std::size_t i) {
        out.objectives[i] = objective_with(engine, scenario, uniform_topology(scenario, out.resistances[i]),
                                           sweep.objective_bands);
    });
    const std::size_t best = argmin(out.objectives);
    out.r_opt = out.resistances[best];
    out.objective = out.objectives[best];
    return out;
}

PerPatchResult optimize_per_patch(const Scenario& scenario, const SweepSpec& sweep) {
    check_scenario(scenario);
    if (scenario.mode != ShuntTopology::Mode::separated)
        throw DomainError("per-patch optimization needs the separated topology");
    const SweepResult uniform = sweep_resistance(scenario, sweep);
    const ResponseEngine engine = make_engine(scenario);
    const std::size_t patches = scenario.model->patches.size();

    PerPatchResult out;
    out.resistances.assign(patches, uniform.r_opt);
    out.objective = uniform.objective;
    out.uniform_objective = uniform.objective;
    out.history.push_back(out.objective);

    const std::vector<double>& candidates = uniform.resistances;
    std::vector<double> values(candidates.size());
    for (int cycle = 0; cycle < 10; ++cycle) {
        const double cycle_start = out.objective;
        for (std::size_t k = 0; k < patches; ++k) {
            parallel_for(candidates.size(), [&](std::size_t i) {
                std::vector<double> trial = out.resistances;
                trial[k] = candidates[i];
                values[i] = objective_with(engine, scenario, per_patch_topology(trial), sweep.objective_bands);
            });
            const std::size_t best = argmin(values);
            if (values[best] < out.objective) {
                out.resistances[k] = candidates[best];
                out.objective = values[best];
                out.history.push_back(out.objective);
            }
        }
        out.cycles = cycle + 1;
        if (cycle_start - out.objective < 1e-3 * cycle_start) break;
    }
    return out;
}

std::vector<Band> resonance_windows(const FrfResult& frf, std::size_t count) {
    const auto& f = frf.frequencies_hz;
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        const double v = std::abs(frf.velocity[i]);
        if (v > std::abs(frf.velocity[i - 1]) && v >= std::abs(frf.velocity[i + 1])) peaks.push_back(i);
    }
    std::vector<Band> out;
    for (std::size_t p = 0; p < peaks.size() && p < count; ++p) {
        Band b;
        b.lo_hz = p == 0 ? f.front() : 0.5 * (f[peaks[p - 1]] + f[peaks[p]]);
        b.hi_hz = p + 1 < peaks.size() ? 0.5 * (f[peaks[p]] + f[peaks[p + 1]]) : f.back();
        out.push_back(b);
    }
    return out;
}

ReductionReport percent_reduction(const FrfResult& frf_oc, const FrfResult& frf_shunted,
                                  const std::vector<Band>& windows) {
    if (frf_oc.frequencies_hz != frf_shunted.frequencies_hz)
        throw DomainError("reduction needs identical frequency grids");
    const auto& f = frf_oc.frequencies_hz;

    struct Peak {
        double value = -1.0;
        double hz = 0.0;
        bool interior = false;
    };
    auto locate = [&](const FrfResult& r, const Band& w) {
        Peak p;
        std::size_t first = f.size();
        std::size_t last = 0;
        std::size_t best = f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < w.lo_hz || f[i] > w.hi_hz) continue;
            first = std::min(first, i);
            last = i;
            const double v = std::abs(r.velocity[i]);
            if (v > p.value) {
                p.value = v;
                best = i;
            }
        }
        if (best < f.size()) {
            p.hz = f[best];
            p.interior = best > first && best < last;
        }
        return p;
    };

    ReductionReport report;
    for (std::size_t m = 0; m < windows.size(); ++m) {
        ModeReduction entry;
        entry.mode = m + 1;
        entry.window = windows[m];
        const Peak oc = locate(frf_oc, windows[m]);
        const Peak sh = locate(frf_shunted, windows[m]);
        entry.oc_peak = oc.value;
        entry.oc_peak_hz = oc.hz;
        entry.shunted_peak = sh.value;
        entry.shunted_peak_hz = sh.hz;
        if (oc.value < 0.0 || sh.value < 0.0) {
            entry.flagged = true;
            entry.note = "window contains no grid frequency";
        } else if (!oc.interior || !sh.interior) {
            entry.flagged = true;
            entry.note = !oc.interior ? "no local maximum of the open-circuit FRF in window"
                                      : "no local maximum of the shunted FRF in window";
        }
        entry.percent = entry.flagged || oc.value <= 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                          : 100.0 * (1.0 - sh.value / oc.value);
        report.modes.push_back(entry);
    }
    return report;
}

TopologyOutcome evaluate_topology(const ModalModel& model, ShuntTopology::Mode mode, const ComparisonSpec& spec) {
    if (spec.reported_modes == 0) throw DomainError("comparison needs at least one reported mode");
    const Scenario scenario{&model, mode, spec.force, spec.target, spec.grid_hz};
    check_scenario(scenario);

    TopologyOutcome out;
    out.mode = mode;
    out.open_circuit = frf(model, uniform_topology(scenario, kOpenCircuitOhm), spec.force, spec.target, spec.grid_hz);
    out.windows = resonance_windows(out.open_circuit, spec.reported_modes);
    if (out.windows.empty()) throw NumericalError("tuning", "open-circuit FRF has no resonance peak in the grid");

    SweepSpec sweep = spec.sweep;
    if (sweep.objective_bands.empty()) sweep.objective_bands = {out.windows.front()};
    out.objective_bands = sweep.objective_bands;
    out.sweep = sweep_resistance(scenario, sweep);

    const ShuntTopology tuned = uniform_topology(scenario, out.sweep.r_opt);
    out.shunted = frf(model, tuned, spec.force, spec.target, spec.grid_hz);
    out.reductions = percent_reduction(out.open_circuit, out.shunted, out.windows);
    out.reductions.topology = tuned.label();
    out.reductions.resistances.assign(mode == ShuntTopology::Mode::connected ? 1 : model.patches.size(),
                                      out.sweep.r_opt);
    return out;
}

Comparison compare_topologies(const ModalModel& model, const ComparisonSpec& spec) {
    return {evaluate_topology(model, ShuntTopology::Mode::separated, spec),
            evaluate_topology(model, ShuntTopology::Mode::connected, spec)};
}

}  // namespace platedamp
