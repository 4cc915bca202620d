// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.
//
// usage: platedamp_acceptance <path-to-platedamp-cli> <reference-config>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fd_plate.hpp"
#include "oracles.hpp"
#include "platedamp/platedamp.hpp"
#include "platedamp_app/config.hpp"

using namespace platedamp;
namespace fs = std::filesystem;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_diff(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double max_rel(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_diff(a[i], b[i]));
    return worst;
}

double max_rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) worst = std::max(worst, rel_diff(a(i), b(i)));
    return worst;
}

struct Context {
    std::string cli;
    app::ScenarioConfig reference;
};

ModalModel reference_model(const Context& ctx, int n) {
    return build_modal_model(ctx.reference.plate, ctx.reference.patches, BasisSpec{n, n, ctx.reference.basis.quadrature_order});
}

ComparisonSpec reference_comparison(const Context& ctx) {
    ComparisonSpec spec;
    spec.force = ctx.reference.force;
    spec.target = ctx.reference.target;
    spec.grid_hz = ctx.reference.grid.frequencies();
    spec.sweep = ctx.reference.sweep->spec;
    spec.reported_modes = ctx.reference.sweep->reported_modes;
    return spec;
}

Outcome bare_plate_accuracy(const Context& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const PlateSpec& plate = ctx.reference.plate;
    const ModalModel m = build_modal_model(plate, {}, BasisSpec{10, 10, 10});
    const auto fd = oracle::fd_clamped_plate_frequencies(plate.length_a, plate.width_b, bare_rigidity(plate),
                                                         plate.density_rhos * plate.thickness_hs, 200, 200, 6);
    double worst = 0.0;
    std::string freqs;
    for (int k = 0; k < 6; ++k) {
        const double ritz = m.frequencies(k);
        worst = std::max(worst, std::abs(ritz - fd[static_cast<std::size_t>(k)]) / fd[static_cast<std::size_t>(k)]);
        freqs += fmt("%s%.2f", k ? "/" : "", ritz / two_pi);
    }
    const double elapsed = seconds_since(t0);
    return {worst < 0.005 && elapsed < 30.0,
            fmt("Ritz 10x10 %s Hz; max rel diff vs FD 200x200 = %.3e (< 5e-3); %.2f s (< 30 s)", freqs.c_str(), worst,
                elapsed)};
}

Outcome patch_limit(const Context& ctx) {
    const PlateSpec& plate = ctx.reference.plate;
    const BasisSpec basis{10, 10, 10};
    const ModalModel bare = build_modal_model(plate, {}, basis);
    std::vector<double> previous(6, std::numeric_limits<double>::infinity());
    bool monotone = true;
    double final_gap = 0.0;
    std::string gaps;
    for (double hp : {1e-4, 1e-5, 1e-6}) {
        PatchSpec p = ctx.reference.patches.front();
        p.thickness_hp = hp;
        const ModalModel m = build_modal_model(plate, std::vector{p}, basis);
        final_gap = 0.0;
        for (int k = 0; k < 6; ++k) {
            const double gap = std::abs(m.frequencies(k) - bare.frequencies(k)) / bare.frequencies(k);
            monotone = monotone && gap < previous[static_cast<std::size_t>(k)];
            previous[static_cast<std::size_t>(k)] = gap;
            final_gap = std::max(final_gap, gap);
        }
        gaps += fmt("%s%.2e", gaps.empty() ? "" : " -> ", final_gap);
    }
    return {monotone && final_gap < 5e-4,
            fmt("max gap per h_p {1e-4,1e-5,1e-6}: %s; monotone per mode: %s; final < 5e-4", gaps.c_str(),
                monotone ? "yes" : "no")};
}

Outcome circuit_oracle(const Context& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModalModel m = reference_model(ctx, 10);
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> freq(1.0, 250.0), logr(2.0, 6.0);
    const Eigen::Index modes = m.mode_count();
    const ResponseEngine engine(m, ctx.reference.force, ctx.reference.target, modes);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double omega = two_pi * freq(rng);
        std::vector<ImpedanceLaw> loads;
        std::vector<cplx> admittances;
        for (std::size_t k = 0; k < m.patches.size(); ++k) {
            loads.push_back(ImpedanceLaw::resistor(std::pow(10.0, logr(rng))));
            admittances.push_back(loads.back().admittance(omega));
        }
        const PointResponse fast = engine.separated(omega, loads);
        const auto mono = oracle::monolithic_separated(m, admittances, ctx.reference.force.amplitude,
                                                       ctx.reference.force.location, ctx.reference.target, omega, modes);
        for (Eigen::Index k = 0; k < fast.voltages.size(); ++k)
            worst = std::max(worst, rel_diff(fast.voltages(k), mono.voltages(k)));
    }
    const double elapsed = seconds_since(t0);
    return {worst < 1e-8 && elapsed < 5.0,
            fmt("K=3, 10 random frequencies/resistances: max voltage rel diff vs monolithic = %.3e (< 1e-8); %.2f s "
                "(< 5 s)",
                worst, elapsed)};
}

Outcome topology_equivalence(const Context& ctx) {
    const ModalModel m = build_modal_model(ctx.reference.plate, std::vector{ctx.reference.patches.front()},
                                           ctx.reference.basis);
    const auto grid = linear_grid(1.0, 250.0, 500);
    double worst = 0.0;
    for (double ohms : {1e2, 1e4, 1e6}) {
        const FrfResult sep = frf_separated(m, ShuntTopology::separated({ImpedanceLaw::resistor(ohms)}),
                                            ctx.reference.force, ctx.reference.target, grid);
        const FrfResult con = frf_connected(m, ShuntTopology::connected(ImpedanceLaw::resistor(ohms)),
                                            ctx.reference.force, ctx.reference.target, grid);
        worst = std::max({worst, max_rel(sep.displacement, con.displacement), max_rel(sep.voltages, con.voltages)});
    }
    return {worst < 1e-12,
            fmt("K=1, 500 points, R in {1e2,1e4,1e6}: max rel diff (displacement, voltage) = %.3e (< 1e-12)", worst)};
}

Outcome short_open_limits(const Context& ctx) {
    const ModalModel m = reference_model(ctx, 10);
    const auto grid = ctx.reference.grid.frequencies();
    const auto& force = ctx.reference.force;
    const Point target = ctx.reference.target;
    const std::size_t patches = m.patches.size();

    const FrfResult mech = frf_mechanical(m, force, target, grid);
    const FrfResult sep_short =
        frf_separated(m, ShuntTopology::separated_uniform(patches, ImpedanceLaw::resistor(1e-3)), force, target, grid);
    const FrfResult con_short =
        frf_connected(m, ShuntTopology::connected(ImpedanceLaw::resistor(1e-3)), force, target, grid);
    const double short_gap = std::max(max_rel(mech.displacement, sep_short.displacement),
                                      max_rel(mech.displacement, con_short.displacement));

    // With one patch both wirings share the same open circuit; with several,
    // the connected node still redistributes charge between patches.
    const ModalModel single = build_modal_model(ctx.reference.plate, std::vector{ctx.reference.patches.front()},
                                                ctx.reference.basis);
    const FrfResult sep_open =
        frf_separated(single, ShuntTopology::separated({ImpedanceLaw::resistor(1e9)}), force, target, grid);
    const FrfResult con_open =
        frf_connected(single, ShuntTopology::connected(ImpedanceLaw::resistor(1e9)), force, target, grid);
    const double open_gap = max_rel(sep_open.displacement, con_open.displacement);
    const FrfResult sep_open3 =
        frf_separated(m, ShuntTopology::separated_uniform(patches, ImpedanceLaw::resistor(1e9)), force, target, grid);
    const FrfResult con_open3 = frf_connected(m, ShuntTopology::connected(ImpedanceLaw::resistor(1e9)), force, target, grid);
    const double open_gap3 = max_rel(sep_open3.displacement, con_open3.displacement);

    return {short_gap < 1e-6 && open_gap < 1e-4,
            fmt("R=1e-3 vs mechanical (K=3, both wirings, %zu points): %.3e (< 1e-6); R=1e9 separated vs connected "
                "(K=1): %.3e (< 1e-4) [K=3, informational: %.3e, distinct open circuits]",
                grid.size(), short_gap, open_gap, open_gap3)};
}

Outcome tuning_interior(const Context& ctx) {
    const ModalModel m = reference_model(ctx, ctx.reference.basis.n_x);
    const TopologyOutcome o = evaluate_topology(m, ShuntTopology::Mode::separated, reference_comparison(ctx));
    const auto& s = o.sweep;
    const std::size_t index = static_cast<std::size_t>(std::find(s.resistances.begin(), s.resistances.end(), s.r_opt) -
                                                       s.resistances.begin());
    const bool interior = index > 0 && index + 1 < s.resistances.size();
    const bool below = s.objective < s.objectives.front() && s.objective < s.objectives.back();
    return {interior && below && s.resistances.size() == 200,
            fmt("separated, 200 log points on [100, 1e6] ohm: R_opt = %.1f ohm (index %zu); peak %.4e < %.4e (100 ohm) "
                "and < %.4e (1 Mohm) m/s",
                s.r_opt, index, s.objective, s.objectives.front(), s.objectives.back())};
}

Outcome table_ordering(const Context& ctx) {
    bool pass = true;
    std::string detail;
    for (int n : {8, 10}) {
        const ModalModel m = reference_model(ctx, n);
        const Comparison c = compare_topologies(m, reference_comparison(ctx));
        double advantage[3];
        std::string row = fmt("%dx%d sep/con %%:", n, n);
        for (int k = 0; k < 3; ++k) {
            const ModeReduction& s = c.separated.reductions.modes.at(static_cast<std::size_t>(k));
            const ModeReduction& co = c.connected.reductions.modes.at(static_cast<std::size_t>(k));
            const bool valid = !s.flagged && !co.flagged;
            advantage[k] = s.percent - co.percent;
            pass = pass && valid && advantage[k] > 0.0;
            row += fmt(" m%d %.2f/%.2f", k + 1, s.percent, co.percent);
        }
        pass = pass && advantage[1] > advantage[0] && advantage[1] > advantage[2];
        detail += (detail.empty() ? "" : "; ") + row;
    }
    return {pass, detail + " (separated > connected each mode; largest gap at mode 2)"};
}

Outcome per_patch_gain(const Context& ctx) {
    const ModalModel m = reference_model(ctx, ctx.reference.basis.n_x);
    const ComparisonSpec spec = reference_comparison(ctx);
    const TopologyOutcome uniform = evaluate_topology(m, ShuntTopology::Mode::separated, spec);
    const Scenario scenario{&m, ShuntTopology::Mode::separated, spec.force, spec.target, spec.grid_hz};
    SweepSpec sweep = spec.sweep;
    sweep.objective_bands = uniform.objective_bands;
    const PerPatchResult pp = optimize_per_patch(scenario, sweep);
    return {pp.objective <= uniform.sweep.objective && pp.uniform_objective == uniform.sweep.objective,
            fmt("coordinate descent %.6e <= uniform %.6e m/s; R = %.0f/%.0f/%.0f ohm after %d cycle(s)", pp.objective,
                uniform.sweep.objective, pp.resistances.at(0), pp.resistances.at(1), pp.resistances.at(2), pp.cycles)};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome cli_determinism(const Context& ctx, const fs::path& config) {
    const fs::path root = fs::temp_directory_path() / "platedamp_acceptance_determinism";
    fs::remove_all(root);
    struct Run {
        const char* name;
        int threads;
    };
    const std::vector<Run> runs{{"a", 1}, {"b", 8}, {"c", 1}, {"d", 8}};
    for (const Run& r : runs) {
        const std::string cmd = "\"" + ctx.cli + "\" compare --config \"" + config.string() + "\" --out \"" +
                                (root / r.name).string() + "\" --threads " + std::to_string(r.threads) +
                                " > /dev/null";
        if (std::system(cmd.c_str()) != 0) return {false, "platedamp compare exited with an error: " + cmd};
    }
    bool same = true;
    std::size_t bytes = 0;
    for (const char* file : {"report.json", "sweep.csv"}) {
        const std::string first = slurp(root / runs.front().name / file);
        bytes += first.size();
        same = same && !first.empty();
        for (const Run& r : runs) same = same && slurp(root / r.name / file) == first;
    }
    fs::remove_all(root);
    return {same, fmt("4 runs of `platedamp compare` (--threads 1, 8, 1, 8): report.json + sweep.csv (%zu bytes) %s",
                      bytes, same ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s <platedamp-cli> <reference-config>\n", argv[0]);
        return 2;
    }
    Context ctx{argv[1], app::load_config(argv[2])};
    if (!ctx.reference.sweep) {
        std::fprintf(stderr, "reference config needs a sweep section\n");
        return 2;
    }

    struct Criterion {
        const char* title;
        std::function<Outcome()> check;
    };
    const fs::path config = argv[2];
    const std::vector<Criterion> criteria{
        {"Bare-plate modal accuracy", [&] { return bare_plate_accuracy(ctx); }},
        {"Patch-limit consistency", [&] { return patch_limit(ctx); }},
        {"Circuit-solve oracle equivalence", [&] { return circuit_oracle(ctx); }},
        {"Topology equivalence at K = 1", [&] { return topology_equivalence(ctx); }},
        {"Short/open limits", [&] { return short_open_limits(ctx); }},
        {"Tuning behavior", [&] { return tuning_interior(ctx); }},
        {"Reduction ordering (separated vs connected)", [&] { return table_ordering(ctx); }},
        {"Per-patch distribution gain", [&] { return per_patch_gain(ctx); }},
        {"Determinism", [&] { return cli_determinism(ctx, config); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
