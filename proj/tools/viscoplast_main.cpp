#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "viscoplast/dispatch.hpp"

namespace {

const char* kUsage =
    "usage: viscoplast <elliptic|powerlaw|bingham|verify> [--config <path>]\n"
    "                  [--out <dir>] [--seed <u64>] [--quiet]\n";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressible Power Law / Bingham numerical laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool quiet = false;

    const char* names[] = {"elliptic", "powerlaw", "bingham", "verify"};
    for (const char* name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "RNG seed (overrides config)")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_flag("--quiet", quiet, "suppress progress output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return viscoplast::cli::kExitOk;
    } catch (const CLI::ParseError&) {
        std::cerr << kUsage;
        return viscoplast::cli::kExitUsage;
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    try {
        viscoplast::cli::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = viscoplast::cli::parse_config(config_path);
        } else if (subcommand != "verify") {
            std::cerr << "error: " << subcommand << " requires --config\n" << kUsage;
            return viscoplast::cli::kExitUsage;
        }
        if (cfg.subcommand.empty())
            cfg.subcommand = subcommand;
        if (cfg.subcommand != subcommand) {
            std::cerr << "error: config subcommand '" << cfg.subcommand
                      << "' does not match '" << subcommand << "'\n";
            return viscoplast::cli::kExitConfig;
        }
        if (!out_dir.empty())
            cfg.out_dir = out_dir;
        if (seed_given)
            cfg.seed = seed;
        if (quiet)
            cfg.quiet = true;
        return viscoplast::cli::dispatch(cfg);
    } catch (const viscoplast::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return viscoplast::cli::kExitConfig;
    } catch (const viscoplast::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return viscoplast::cli::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return viscoplast::cli::kExitInternal;
    }
}
