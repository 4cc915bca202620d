#include "platedamp_app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "platedamp_app/json_text.hpp"

namespace platedamp::app {

namespace {

using nlohmann::json;

// Field access on one JSON object with the path used in error messages and
// a record of which keys were consumed, so leftovers can be rejected.
class Section {
public:
    Section(const json& value, std::string path) : value_(value), path_(std::move(path)) {
        if (!value_.is_object()) fail("expected an object");
    }

    bool has(const std::string& key) const { return value_.contains(key); }

    const json& raw(const std::string& key) {
        if (!value_.contains(key)) throw ConfigError(field(key) + ": missing required field");
        seen_.insert(key);
        return value_.at(key);
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(field(key) + ": expected a finite number");
        return d;
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    long long integer(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
        return v.get<long long>();
    }

    long long integer_or(const std::string& key, long long fallback) { return has(key) ? integer(key) : fallback; }

    std::string text(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
        return v.get<std::string>();
    }

    Section child(const std::string& key) { return Section(raw(key), field(key)); }

    const json& array(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(field(key) + ": expected an array");
        return v;
    }

    void finish() const {
        for (const auto& item : value_.items()) {
            if (!seen_.contains(item.key())) throw ConfigError(field(item.key()) + ": unknown key");
        }
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(path_ + ": " + what); }

private:
    const json& value_;
    std::string path_;
    std::set<std::string> seen_;
};

// Re-raises a domain check as a configuration error on `path`.
template <class F>
void checked(const std::string& path, F&& check) {
    try {
        check();
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::size_t to_count(long long v, const std::string& field, long long minimum) {
    if (v < minimum) throw ConfigError(field + ": must be >= " + std::to_string(minimum));
    return static_cast<std::size_t>(v);
}

PlateSpec parse_plate(Section s) {
    PlateSpec p;
    p.length_a = s.number("length_a");
    p.width_b = s.number("width_b");
    p.thickness_hs = s.number("thickness_hs");
    p.youngs_Ys = s.number("youngs_Ys");
    p.poisson_nus = s.number("poisson_nus");
    p.density_rhos = s.number("density_rhos");
    p.modal_damping_xi = s.number("modal_damping_xi");
    s.finish();
    checked(s.path(), [&] { validate(p); });
    return p;
}

PatchSpec parse_patch(Section s) {
    PatchSpec p;
    Section fp = s.child("footprint");
    p.footprint = {fp.number("x1"), fp.number("x2"), fp.number("y1"), fp.number("y2")};
    fp.finish();
    p.thickness_hp = s.number("thickness_hp");
    p.density_rhop = s.number("density_rhop");
    p.eps33_s = s.number("eps33_s");

    const bool reduced = s.has("c11_bar") || s.has("c12_bar") || s.has("c66_bar");
    const bool isotropic = s.has("youngs_Yp") || s.has("poisson_nup");
    if (reduced == isotropic)
        s.fail("give either c11_bar/c12_bar/c66_bar or youngs_Yp/poisson_nup");
    if (reduced) {
        p.c11_bar = s.number("c11_bar");
        p.c12_bar = s.number("c12_bar");
        p.c66_bar = s.number("c66_bar");
    } else {
        const double youngs = s.number("youngs_Yp");
        const double poisson = s.number("poisson_nup");
        if (!(youngs > 0.0)) throw ConfigError(s.field("youngs_Yp") + ": must be > 0");
        if (!(poisson > -1.0 && poisson < 0.5)) throw ConfigError(s.field("poisson_nup") + ": must lie in (-1, 0.5)");
        const PatchSpec iso = PatchSpec::from_isotropic(youngs, poisson, 0.0, 0.0, 0.0, 0.0, {});
        p.c11_bar = iso.c11_bar;
        p.c12_bar = iso.c12_bar;
        p.c66_bar = iso.c66_bar;
    }

    if (s.has("e31_bar") == s.has("d31")) s.fail("give exactly one of e31_bar or d31");
    p.e31_bar = s.has("e31_bar") ? s.number("e31_bar") : PatchSpec::e31_from_d31(s.number("d31"), p.c11_bar, p.c12_bar);
    s.finish();
    return p;
}

ImpedanceLaw parse_load(Section s) {
    const std::string type = s.text("type");
    ImpedanceLaw law = ImpedanceLaw::open();
    checked(s.path(), [&] {
        if (type == "resistor") {
            law = ImpedanceLaw::resistor(s.number("ohms"));
        } else if (type == "series_rl") {
            const double ohms = s.number("ohms");
            law = ImpedanceLaw::series_rl(ohms, s.number("henries"));
        } else if (type == "open") {
            law = ImpedanceLaw::open();
        } else if (type == "short") {
            law = ImpedanceLaw::short_circuit();
        } else {
            throw ConfigError(s.field("type") + ": expected resistor, series_rl, open or short");
        }
    });
    s.finish();
    return law;
}

ShuntTopology parse_topology(Section s, std::size_t patches) {
    const std::string mode = s.text("mode");
    const json& loads = s.array("loads");
    std::vector<ImpedanceLaw> laws;
    for (std::size_t i = 0; i < loads.size(); ++i)
        laws.push_back(parse_load(Section(loads[i], s.field("loads") + "[" + std::to_string(i) + "]")));
    s.finish();

    if (mode == "separated") {
        if (laws.size() != patches)
            throw ConfigError(s.field("loads") + ": separated wiring needs one load per patch (" +
                              std::to_string(patches) + ")");
        return ShuntTopology::separated(std::move(laws));
    }
    if (mode == "connected") {
        if (patches == 0) throw ConfigError(s.field("mode") + ": connected wiring needs at least one patch");
        if (laws.size() != 1) throw ConfigError(s.field("loads") + ": connected wiring takes exactly one load");
        return ShuntTopology::connected(laws.front());
    }
    throw ConfigError(s.field("mode") + ": expected separated or connected");
}

Point parse_point(Section s, const PlateSpec& plate) {
    const Point p{s.number("x"), s.number("y")};
    if (!plate.contains(p)) s.fail("point lies outside the plate");
    return p;
}

SweepConfig parse_sweep(Section s, const GridSpec& grid) {
    SweepConfig c;
    c.spec.r_min = s.number_or("r_min", c.spec.r_min);
    c.spec.r_max = s.number_or("r_max", c.spec.r_max);
    c.spec.points = to_count(s.integer_or("points", static_cast<long long>(c.spec.points)), s.field("points"), 2);
    c.reported_modes = to_count(s.integer_or("reported_modes", 3), s.field("reported_modes"), 1);
    if (s.has("objective_bands")) {
        const json& bands = s.array("objective_bands");
        for (std::size_t i = 0; i < bands.size(); ++i) {
            Section b(bands[i], s.field("objective_bands") + "[" + std::to_string(i) + "]");
            const Band band{b.number("lo_hz"), b.number("hi_hz")};
            b.finish();
            if (!(band.lo_hz < band.hi_hz)) b.fail("lo_hz must be < hi_hz");
            if (band.lo_hz < grid.start_hz || band.hi_hz > grid.stop_hz) b.fail("band must lie within the grid span");
            c.spec.objective_bands.push_back(band);
        }
    }
    s.finish();
    if (!(c.spec.r_min > 0.0) || !(c.spec.r_max > c.spec.r_min))
        throw ConfigError(s.path() + ": must satisfy 0 < r_min < r_max");
    return c;
}

nlohmann::ordered_json load_to_json(const ImpedanceLaw& law) {
    switch (law.kind()) {
        case ImpedanceLaw::Kind::resistor:
            return {{"type", "resistor"}, {"ohms", law.resistance()}};
        case ImpedanceLaw::Kind::series_rl:
            return {{"type", "series_rl"}, {"ohms", law.resistance()}, {"henries", law.inductance()}};
        case ImpedanceLaw::Kind::open:
            return {{"type", "open"}};
        case ImpedanceLaw::Kind::short_circuit:
            return {{"type", "short"}};
    }
    return {};
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }

    Section s(root, "");
    ScenarioConfig c;
    c.plate = parse_plate(s.child("plate"));

    const json& patches = s.array("patches");
    for (std::size_t i = 0; i < patches.size(); ++i)
        c.patches.push_back(parse_patch(Section(patches[i], "patches[" + std::to_string(i) + "]")));
    checked("patches", [&] { validate(c.plate, std::span<const PatchSpec>(c.patches)); });

    c.topology = parse_topology(s.child("topology"), c.patches.size());

    Section force = s.child("force");
    c.force.amplitude = force.number("amplitude");
    c.force.location = {force.number("x"), force.number("y")};
    force.finish();
    if (!c.plate.contains(c.force.location)) force.fail("point lies outside the plate");

    c.target = parse_point(s.child("target"), c.plate);

    Section grid = s.child("grid");
    c.grid.start_hz = grid.number("start_hz");
    c.grid.stop_hz = grid.number("stop_hz");
    c.grid.count = to_count(grid.integer("count"), grid.field("count"), 2);
    grid.finish();
    if (!(c.grid.start_hz >= 0.0) || !(c.grid.stop_hz > c.grid.start_hz))
        grid.fail("must satisfy 0 <= start_hz < stop_hz");

    Section basis = s.child("basis");
    c.basis.n_x = static_cast<int>(to_count(basis.integer("n_x"), basis.field("n_x"), 1));
    c.basis.n_y = static_cast<int>(to_count(basis.integer("n_y"), basis.field("n_y"), 1));
    c.basis.quadrature_order = static_cast<int>(
        to_count(basis.integer_or("quadrature_order", c.basis.quadrature_order), basis.field("quadrature_order"), 2));
    basis.finish();

    if (s.has("sweep")) c.sweep = parse_sweep(s.child("sweep"), c.grid);
    s.finish();
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string normalized_json(const ScenarioConfig& c) {
    nlohmann::ordered_json root;
    root["plate"] = {{"length_a", c.plate.length_a},         {"width_b", c.plate.width_b},
                     {"thickness_hs", c.plate.thickness_hs}, {"youngs_Ys", c.plate.youngs_Ys},
                     {"poisson_nus", c.plate.poisson_nus},   {"density_rhos", c.plate.density_rhos},
                     {"modal_damping_xi", c.plate.modal_damping_xi}};
    root["patches"] = nlohmann::ordered_json::array();
    for (const PatchSpec& p : c.patches) {
        nlohmann::ordered_json j;
        j["footprint"] = {{"x1", p.footprint.x1}, {"x2", p.footprint.x2}, {"y1", p.footprint.y1}, {"y2", p.footprint.y2}};
        j["thickness_hp"] = p.thickness_hp;
        j["density_rhop"] = p.density_rhop;
        j["eps33_s"] = p.eps33_s;
        j["c11_bar"] = p.c11_bar;
        j["c12_bar"] = p.c12_bar;
        j["c66_bar"] = p.c66_bar;
        j["e31_bar"] = p.e31_bar;
        root["patches"].push_back(j);
    }
    nlohmann::ordered_json loads = nlohmann::ordered_json::array();
    for (const ImpedanceLaw& law : c.topology.loads) loads.push_back(load_to_json(law));
    root["topology"] = {{"mode", c.topology.label()}, {"loads", loads}};
    root["force"] = {{"amplitude", c.force.amplitude}, {"x", c.force.location.x}, {"y", c.force.location.y}};
    root["target"] = {{"x", c.target.x}, {"y", c.target.y}};
    root["grid"] = {{"start_hz", c.grid.start_hz}, {"stop_hz", c.grid.stop_hz}, {"count", c.grid.count}};
    root["basis"] = {{"n_x", c.basis.n_x}, {"n_y", c.basis.n_y}, {"quadrature_order", c.basis.quadrature_order}};
    if (c.sweep) {
        nlohmann::ordered_json bands = nlohmann::ordered_json::array();
        for (const Band& b : c.sweep->spec.objective_bands) bands.push_back({{"lo_hz", b.lo_hz}, {"hi_hz", b.hi_hz}});
        root["sweep"] = {{"r_min", c.sweep->spec.r_min},
                         {"r_max", c.sweep->spec.r_max},
                         {"points", c.sweep->spec.points},
                         {"objective_bands", bands},
                         {"reported_modes", c.sweep->reported_modes}};
    }
    return dump_json(root);
}

}  // namespace platedamp::app
