#include "platedamp_app/runner.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "platedamp_app/json_text.hpp"

namespace platedamp::app {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double two_pi = 2.0 * std::numbers::pi;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError(path.string() + ": cannot open for writing");
    f << content;
    if (!f) throw OutputError(path.string() + ": write failed");
}

void append_row(std::string& csv, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) csv += ',';
        first = false;
        csv += format_number(v);
    }
}

ojson band_json(const Band& b) { return {{"lo_hz", b.lo_hz}, {"hi_hz", b.hi_hz}}; }

ojson sweep_spec_json(const SweepSpec& s, std::size_t reported_modes) {
    ojson bands = ojson::array();
    for (const Band& b : s.objective_bands) bands.push_back(band_json(b));
    return {{"r_min_ohm", s.r_min},
            {"r_max_ohm", s.r_max},
            {"points", s.points},
            {"objective", "peak |velocity| at the target within the objective bands"},
            {"objective_bands", bands},
            {"reported_modes", reported_modes}};
}

ojson metadata_json(const ScenarioConfig& c, const ModalModel& model) {
    ojson freqs = ojson::array();
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(model.mode_count(), 6); ++k)
        freqs.push_back(model.frequencies(k) / two_pi);
    const std::vector<double> grid = c.grid.frequencies();
    return {{"basis", {{"n_x", c.basis.n_x}, {"n_y", c.basis.n_y}, {"quadrature_order", c.basis.quadrature_order}}},
            {"mode_count", model.mode_count()},
            {"retained_modes", retained_mode_count(model, grid.back())},
            {"patch_count", model.patches.size()},
            {"grid", {{"start_hz", c.grid.start_hz}, {"stop_hz", c.grid.stop_hz}, {"count", c.grid.count}}},
            {"force", {{"amplitude_n", c.force.amplitude}, {"x", c.force.location.x}, {"y", c.force.location.y}}},
            {"target", {{"x", c.target.x}, {"y", c.target.y}}},
            {"first_natural_frequencies_hz", freqs}};
}

ojson reductions_json(const ReductionReport& r) {
    ojson modes = ojson::array();
    for (const ModeReduction& m : r.modes) {
        ojson entry = {{"mode", m.mode},
                       {"window", band_json(m.window)},
                       {"oc_peak_m_per_s", m.oc_peak},
                       {"oc_peak_hz", m.oc_peak_hz},
                       {"shunted_peak_m_per_s", m.shunted_peak},
                       {"shunted_peak_hz", m.shunted_peak_hz},
                       {"percent_reduction", m.percent},
                       {"flagged", m.flagged}};
        if (!m.note.empty()) entry["note"] = m.note;
        modes.push_back(entry);
    }
    ojson resistances = ojson::array();
    for (double ohm : r.resistances) resistances.push_back(ohm);
    return {{"topology", r.topology}, {"resistances_ohm", resistances}, {"modes", modes}};
}

ojson outcome_json(const TopologyOutcome& o) {
    ojson bands = ojson::array();
    for (const Band& b : o.objective_bands) bands.push_back(band_json(b));
    ojson windows = ojson::array();
    for (const Band& b : o.windows) windows.push_back(band_json(b));
    return {{"topology", o.reductions.topology},
            {"r_opt_ohm", o.sweep.r_opt},
            {"objective_m_per_s", o.sweep.objective},
            {"objective_at_r_min_m_per_s", o.sweep.objectives.front()},
            {"objective_at_r_max_m_per_s", o.sweep.objectives.back()},
            {"objective_bands", bands},
            {"resonance_windows", windows},
            {"reduction", reductions_json(o.reductions)}};
}

ojson per_patch_json(const PerPatchResult& p) {
    ojson resistances = ojson::array();
    for (double ohm : p.resistances) resistances.push_back(ohm);
    ojson history = ojson::array();
    for (double v : p.history) history.push_back(v);
    return {{"resistances_ohm", resistances},
            {"objective_m_per_s", p.objective},
            {"uniform_objective_m_per_s", p.uniform_objective},
            {"cycles", p.cycles},
            {"history_m_per_s", history}};
}

const SweepConfig& require_sweep(const ScenarioConfig& c) {
    if (!c.sweep) throw ConfigError("sweep: section required by this command (config is FRF-only)");
    return *c.sweep;
}

ComparisonSpec comparison_spec(const ScenarioConfig& c) {
    const SweepConfig& s = require_sweep(c);
    if (c.patches.empty()) throw ConfigError("patches: a sweep needs at least one patch");
    ComparisonSpec spec;
    spec.force = c.force;
    spec.target = c.target;
    spec.grid_hz = c.grid.frequencies();
    spec.sweep = s.spec;
    spec.reported_modes = s.reported_modes;
    return spec;
}

PerPatchResult per_patch(const ModalModel& model, const ComparisonSpec& spec, const TopologyOutcome& separated) {
    const Scenario scenario{&model, ShuntTopology::Mode::separated, spec.force, spec.target, spec.grid_hz};
    SweepSpec sweep = spec.sweep;
    sweep.objective_bands = separated.objective_bands;
    return optimize_per_patch(scenario, sweep);
}

void run_modes(const ScenarioConfig& c, const ModalModel& model, const std::filesystem::path& dir, std::ostream& out) {
    write_file(dir / "modes.csv", modes_csv(model));
    out << "modes: " << model.mode_count() << " modes, first at " << format_number(model.frequencies(0) / two_pi)
        << " Hz -> " << (dir / "modes.csv").string() << "\n";
    (void)c;
}

void run_frf(const ScenarioConfig& c, const ModalModel& model, const std::filesystem::path& dir, std::ostream& out) {
    const FrfResult r = frf(model, c.topology, c.force, c.target, c.grid.frequencies());
    write_file(dir / "frf.csv", frf_csv(r));
    out << "frf: " << r.frequencies_hz.size() << " frequencies (" << c.topology.label() << ") -> "
        << (dir / "frf.csv").string() << "\n";
}

void run_sweep(const ScenarioConfig& c, const ModalModel& model, const std::filesystem::path& dir, std::ostream& out) {
    const ComparisonSpec spec = comparison_spec(c);
    const TopologyOutcome o = evaluate_topology(model, c.topology.mode, spec);

    std::string csv = "r_ohm,objective_m_per_s\n";
    for (std::size_t i = 0; i < o.sweep.resistances.size(); ++i) {
        append_row(csv, {o.sweep.resistances[i], o.sweep.objectives[i]});
        csv += '\n';
    }
    write_file(dir / "sweep.csv", csv);

    ojson report;
    report["command"] = "sweep";
    report["metadata"] = metadata_json(c, model);
    report["sweep"] = sweep_spec_json(spec.sweep, spec.reported_modes);
    report["result"] = outcome_json(o);
    if (c.topology.mode == ShuntTopology::Mode::separated) report["per_patch"] = per_patch_json(per_patch(model, spec, o));
    write_file(dir / "report.json", dump_json(report));
    out << "sweep (" << o.reductions.topology << "): R_opt = " << format_number(o.sweep.r_opt) << " ohm -> "
        << (dir / "report.json").string() << "\n";
}

void run_compare(const ScenarioConfig& c, const ModalModel& model, const std::filesystem::path& dir, std::ostream& out) {
    const ComparisonSpec spec = comparison_spec(c);
    const Comparison cmp = compare_topologies(model, spec);

    std::string csv = "r_ohm,separated_objective_m_per_s,connected_objective_m_per_s\n";
    for (std::size_t i = 0; i < cmp.separated.sweep.resistances.size(); ++i) {
        append_row(csv, {cmp.separated.sweep.resistances[i], cmp.separated.sweep.objectives[i],
                         cmp.connected.sweep.objectives[i]});
        csv += '\n';
    }
    write_file(dir / "sweep.csv", csv);

    ojson table = ojson::array();
    const auto& sep = cmp.separated.reductions.modes;
    const auto& con = cmp.connected.reductions.modes;
    for (std::size_t m = 0; m < std::max(sep.size(), con.size()); ++m) {
        ojson row = {{"mode", m + 1}};
        row["connected_percent"] = m < con.size() ? con[m].percent : std::nan("");
        row["separated_percent"] = m < sep.size() ? sep[m].percent : std::nan("");
        table.push_back(row);
    }

    ojson report;
    report["command"] = "compare";
    report["metadata"] = metadata_json(c, model);
    report["sweep"] = sweep_spec_json(spec.sweep, spec.reported_modes);
    report["table"] = table;
    report["separated"] = outcome_json(cmp.separated);
    report["connected"] = outcome_json(cmp.connected);
    report["per_patch"] = per_patch_json(per_patch(model, spec, cmp.separated));
    write_file(dir / "report.json", dump_json(report));

    out << "mode  connected[%]  separated[%]\n";
    for (const auto& row : table) {
        char line[96];
        const double cp = row["connected_percent"].get<double>();
        const double sp = row["separated_percent"].get<double>();
        std::snprintf(line, sizeof line, "%4d  %12.2f  %12.2f\n", row["mode"].get<int>(), cp, sp);
        out << line;
    }
    out << "-> " << (dir / "report.json").string() << "\n";
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "modes") return Command::modes;
    if (name == "frf") return Command::frf;
    if (name == "sweep") return Command::sweep;
    if (name == "compare") return Command::compare;
    return std::nullopt;
}

std::string modes_csv(const ModalModel& model) {
    const Eigen::Index patches = model.patch_count();
    std::string csv = "mode,freq_hz,omega_rad_per_s";
    for (Eigen::Index k = 1; k <= patches; ++k) csv += ",theta" + std::to_string(k) + "_N_per_V_sqrtkg";
    for (Eigen::Index k = 1; k <= patches; ++k) csv += ",cp" + std::to_string(k) + "_F";
    csv += '\n';
    for (Eigen::Index m = 0; m < model.mode_count(); ++m) {
        csv += std::to_string(m + 1);
        const double omega = model.frequencies(m);
        csv += ',' + format_number(omega / two_pi) + ',' + format_number(omega);
        for (Eigen::Index k = 0; k < patches; ++k) csv += ',' + format_number(model.coupling(m, k));
        for (Eigen::Index k = 0; k < patches; ++k) csv += ',' + format_number(model.capacitances(k));
        csv += '\n';
    }
    return csv;
}

std::string frf_csv(const FrfResult& r) {
    const Eigen::Index patches = r.voltages.cols();
    std::string csv = "freq_hz,disp_re,disp_im,vel_re,vel_im,|vel|";
    for (Eigen::Index k = 1; k <= patches; ++k) {
        const std::string v = "v" + std::to_string(k);
        csv += "," + v + "_re," + v + "_im";
    }
    csv += '\n';
    for (std::size_t i = 0; i < r.frequencies_hz.size(); ++i) {
        append_row(csv, {r.frequencies_hz[i], r.displacement[i].real(), r.displacement[i].imag(),
                         r.velocity[i].real(), r.velocity[i].imag(), std::abs(r.velocity[i])});
        const auto row = static_cast<Eigen::Index>(i);
        for (Eigen::Index k = 0; k < patches; ++k) {
            csv += ',' + format_number(r.voltages(row, k).real());
            csv += ',' + format_number(r.voltages(row, k).imag());
        }
        csv += '\n';
    }
    return csv;
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const ScenarioConfig config = load_config(options.config);
        std::error_code ec;
        std::filesystem::create_directories(options.out_dir, ec);
        if (ec) throw OutputError(options.out_dir.string() + ": " + ec.message());

        const ModalModel model = build_modal_model(config.plate, config.patches, config.basis);
        switch (options.command) {
            case Command::modes: run_modes(config, model, options.out_dir, out); break;
            case Command::frf: run_frf(config, model, options.out_dir, out); break;
            case Command::sweep: run_sweep(config, model, options.out_dir, out); break;
            case Command::compare: run_compare(config, model, options.out_dir, out); break;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure in " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace platedamp::app
