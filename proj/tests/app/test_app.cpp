#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "platedamp_app/config.hpp"
#include "platedamp_app/json_text.hpp"
#include "platedamp_app/runner.hpp"

using namespace platedamp;
using namespace platedamp::app;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(PLATEDAMP_SOURCE_DIR) / "configs";

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

nlohmann::json reference_json() { return nlohmann::json::parse(slurp(kConfigs / "reference.json")); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("platedamp_app_tests_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const nlohmann::json& j) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump(2);
    return p;
}

std::string config_error(const nlohmann::json& j) {
    try {
        parse_config(j.dump());
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

int run_command(Command c, const fs::path& config, const fs::path& out, std::string* err_text = nullptr) {
    std::ostringstream out_stream, err_stream;
    const int code = run(RunOptions{c, config, out}, out_stream, err_stream);
    if (err_text) *err_text = err_stream.str();
    return code;
}

}  // namespace

TEST_CASE("reference config parses with the documented derivations") {
    const ScenarioConfig c = load_config(kConfigs / "reference.json");
    CHECK(c.patches.size() == 3);
    CHECK(c.plate.poisson_nus == 0.33);
    CHECK(c.basis.n_x == 10);
    CHECK(c.basis.quadrature_order == 10);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->spec.points == 200);
    CHECK(c.sweep->spec.objective_bands.empty());
    const PatchSpec& p = c.patches[0];
    CHECK(p.c11_bar == doctest::Approx(69e9 / (1.0 - 0.31 * 0.31)).epsilon(1e-15));
    CHECK(p.c12_bar == doctest::Approx(0.31 * p.c11_bar).epsilon(1e-15));
    CHECK(p.c66_bar == doctest::Approx(69e9 / 2.62).epsilon(1e-15));
    CHECK(p.e31_bar == doctest::Approx(-19.0).epsilon(1e-12));
    CHECK(c.grid.frequencies().size() == 2491);
}

TEST_CASE("normalized form round-trips exactly") {
    for (const char* name : {"reference.json", "bare_plate.json", "single_patch.json"}) {
        const ScenarioConfig c = load_config(kConfigs / name);
        const std::string once = normalized_json(c);
        const std::string twice = normalized_json(parse_config(once));
        CHECK(once == twice);
    }
}

TEST_CASE("config errors name the offending field") {
    nlohmann::json j = reference_json();
    j["patches"][2]["footprint"]["x2"] = 0.6;
    CHECK(config_error(j).find("patch 2") != std::string::npos);

    j = reference_json();
    j["plate"]["colour"] = "grey";
    CHECK(config_error(j) == "plate.colour: unknown key");

    j = reference_json();
    j["patches"][1].erase("thickness_hp");
    CHECK(config_error(j) == "patches[1].thickness_hp: missing required field");

    j = reference_json();
    j["target"]["x"] = 0.9;
    CHECK(config_error(j).rfind("target:", 0) == 0);

    j = reference_json();
    j["force"]["y"] = -0.1;
    CHECK(config_error(j).rfind("force:", 0) == 0);

    j = reference_json();
    j["patches"][1]["footprint"] = j["patches"][0]["footprint"];
    CHECK(config_error(j).find("overlaps") != std::string::npos);

    j = reference_json();
    j["grid"]["count"] = 1;
    CHECK(config_error(j) == "grid.count: must be >= 2");

    j = reference_json();
    j["topology"]["loads"].erase(0);
    CHECK(config_error(j).rfind("topology.loads", 0) == 0);

    j = reference_json();
    j["patches"][0]["e31_bar"] = -5.0;
    CHECK(config_error(j).find("exactly one of e31_bar or d31") != std::string::npos);

    j = reference_json();
    j["sweep"]["objective_bands"] = nlohmann::json::array({{{"lo_hz", 200.0}, {"hi_hz", 300.0}}});
    CHECK(config_error(j) == "sweep.objective_bands[0]: band must lie within the grid span");

    j = reference_json();
    j["plate"]["thickness_hs"] = "thin";
    CHECK(config_error(j) == "plate.thickness_hs: expected a number");

    CHECK(config_error(nlohmann::json::parse("[1, 2]")) == ": expected an object");
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
}

TEST_CASE("reduced moduli and e31 may be given directly") {
    nlohmann::json j = reference_json();
    for (auto& p : j["patches"]) {
        p.erase("youngs_Yp");
        p.erase("poisson_nup");
        p.erase("d31");
        p["c11_bar"] = 7.6e10;
        p["c12_bar"] = 2.3e10;
        p["c66_bar"] = 2.6e10;
        p["e31_bar"] = -12.5;
    }
    const ScenarioConfig c = parse_config(j.dump());
    CHECK(c.patches[0].c11_bar == 7.6e10);
    CHECK(c.patches[0].e31_bar == -12.5);
}

TEST_CASE("FRF-only config rejects sweep commands") {
    nlohmann::json j = reference_json();
    j.erase("sweep");
    const fs::path dir = scratch("frf_only");
    const fs::path cfg = write_config(dir, j);
    CHECK_FALSE(parse_config(j.dump()).sweep.has_value());
    std::string err;
    CHECK(run_command(Command::sweep, cfg, dir / "out", &err) == kExitConfig);
    CHECK(err.find("sweep") != std::string::npos);
    CHECK(run_command(Command::frf, cfg, dir / "out") == kExitOk);
    CHECK(fs::exists(dir / "out" / "frf.csv"));
}

TEST_CASE("modes on the bare plate") {
    const fs::path dir = scratch("bare");
    REQUIRE(run_command(Command::modes, kConfigs / "bare_plate.json", dir) == kExitOk);
    std::istringstream csv(slurp(dir / "modes.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "mode,freq_hz,omega_rad_per_s");
    double previous = 0.0;
    int rows = 0;
    while (std::getline(csv, line)) {
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        const double hz = std::stod(line.substr(first + 1, second - first - 1));
        CHECK(hz > previous);
        previous = hz;
        ++rows;
    }
    CHECK(rows == 100);
}

TEST_CASE("frf.csv layout") {
    const fs::path dir = scratch("frf");
    REQUIRE(run_command(Command::frf, kConfigs / "reference.json", dir) == kExitOk);
    std::istringstream csv(slurp(dir / "frf.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "freq_hz,disp_re,disp_im,vel_re,vel_im,|vel|,v1_re,v1_im,v2_re,v2_im,v3_re,v3_im");
    std::getline(csv, line);
    CHECK(line.rfind("1,", 0) == 0);
    // 17 significant digits on every non-trivial number.
    CHECK(line.find("e-06,") != std::string::npos);
    CHECK(format_number(0.1) == "0.10000000000000001");
    int rows = 1;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 2491);
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("exit");
    std::string err;
    CHECK(run_command(Command::modes, dir / "missing.json", dir / "out", &err) == kExitConfig);

    nlohmann::json j = reference_json();
    j["patches"][0]["footprint"]["x1"] = 0.5;
    CHECK(run_command(Command::modes, write_config(dir, j), dir / "out", &err) == kExitConfig);
    CHECK(err.find("patch 0") != std::string::npos);

    // A zero-ohm load has no admittance: reported as a numerical failure
    // with the module that raised it.
    j = reference_json();
    j["topology"]["loads"][1]["ohms"] = 0.0;
    CHECK(run_command(Command::frf, write_config(dir, j), dir / "out", &err) == kExitNumerical);
    CHECK(err.find("shunt-response") != std::string::npos);
}

TEST_CASE("the CLI never rewrites its config") {
    const fs::path dir = scratch("readonly");
    const fs::path cfg = write_config(dir, reference_json());
    const std::string before = slurp(cfg);
    REQUIRE(run_command(Command::modes, cfg, dir / "out") == kExitOk);
    CHECK(slurp(cfg) == before);
}

TEST_CASE("json numbers use 17 significant digits") {
    nlohmann::ordered_json j = {{"a", 0.1}, {"b", 3}, {"c", std::nan("")}, {"d", nlohmann::ordered_json::array()}};
    CHECK(dump_json(j) == "{\n  \"a\": 0.10000000000000001,\n  \"b\": 3,\n  \"c\": null,\n  \"d\": []\n}\n");
}
