#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "semilab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"semigroup-lab: measure evolution under the heat semigroup and its positive "
                 "perturbations, with machine-readable verification reports"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    bool trials_set = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        cmd->add_option("--out", out_dir, "report directory (default: out)");
        cmd->add_option("--seed", seed, "override the config seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--trials", trials, "override the config trial count")
            ->each([&](const std::string&) { trials_set = true; });
    };

    for (const char* name : {"evolve", "resolvent", "verify", "oracle"})
        add_common(app.add_subcommand(name, std::string("run the ") + name + " command"));

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        semilab::RunConfig config = semilab::load_config(config_path);
        if (seed_set) config.seed = seed;
        if (trials_set) config.trials = trials;
        return semilab::run_command(command, config, out_dir);
    } catch (const semilab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
