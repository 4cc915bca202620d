#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "platedamp/platedamp.hpp"

namespace platedamp::app {

/// A configuration file that cannot be turned into a valid scenario. The
/// message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double start_hz = 0.0;
    double stop_hz = 0.0;
    std::size_t count = 0;

    std::vector<double> frequencies() const { return linear_grid(start_hz, stop_hz, count); }
};

/// Resistor sweep settings. Empty objective_bands means "the mode-1 window of
/// the open-circuit FRF".
struct SweepConfig {
    SweepSpec spec;
    std::size_t reported_modes = 3;
};

struct ScenarioConfig {
    PlateSpec plate;
    std::vector<PatchSpec> patches;
    ShuntTopology topology;
    ForceSpec force;
    Point target;
    GridSpec grid;
    BasisSpec basis;
    std::optional<SweepConfig> sweep;   // absent: FRF-only scenario
};

/// Strict JSON parse: every field in SI units, unknown keys rejected,
/// defaults only for basis.quadrature_order and the contents of "sweep".
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical JSON text with every default and derived value written out.
/// parse_config(normalized_json(c)) reproduces c exactly.
std::string normalized_json(const ScenarioConfig& config);

}  // namespace platedamp::app
