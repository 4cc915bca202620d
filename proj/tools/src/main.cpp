#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "platedamp/parallel.hpp"
#include "platedamp_app/runner.hpp"

int main(int argc, char** argv) {
    using namespace platedamp::app;

    CLI::App app{"Piezoelectric shunt damping of clamped plates: modes, FRFs and resistor tuning"};
    std::string command;
    RunOptions options;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    app.add_option("command", command, "modes | frf | sweep | compare")
        ->required()
        ->check(CLI::IsMember({"modes", "frf", "sweep", "compare"}));
    app.add_option("--config", options.config, "scenario configuration (JSON, SI units)")->required();
    app.add_option("--out", options.out_dir, "output directory (created if missing)")->required();
    app.add_option("--threads", threads, "worker threads for frequency and sweep loops")
        ->check(CLI::Range(1, 1024));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    options.command = *parse_command(command);
    platedamp::set_thread_count(threads);
    return run(options, std::cout, std::cerr);
}
