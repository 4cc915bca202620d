#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "platedamp_app/config.hpp"

namespace platedamp::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // I/O and other unexpected failures
inline constexpr int kExitConfig = 2;      // invalid invocation or configuration
inline constexpr int kExitNumerical = 3;   // a solver reported a numerical failure

enum class Command { modes, frf, sweep, compare };

std::optional<Command> parse_command(std::string_view name);

struct RunOptions {
    Command command = Command::modes;
    std::filesystem::path config;
    std::filesystem::path out_dir;
};

/// Loads the config, runs the command and writes its output files into
/// out_dir (created if missing). Errors are reported on `err` and mapped to
/// the exit codes above.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

// Output documents, exposed for tests.
std::string modes_csv(const ModalModel& model);
std::string frf_csv(const FrfResult& frf);

}  // namespace platedamp::app
