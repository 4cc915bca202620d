#pragma once

#include <string>

#include "json.hpp"

namespace platedamp::app {

/// Formats a double with 17 significant digits ("%.17g").
std::string format_number(double value);

/// Pretty-printed JSON (two-space indent, keys in insertion order of the
/// object) with every floating-point value written as %.17g. Non-finite
/// numbers become null.
std::string dump_json(const nlohmann::ordered_json& value);

}  // namespace platedamp::app
