// hybridcat: command-line runner for the hybrid entanglement experiments.
//
//   hybridcat generate --alpha 1 --r 0.05 --variant 1
//   hybridcat run --config sweep.cfg --alpha 0.5:2.5:5
//   hybridcat validate --protocol swap-cv --alpha 3
//
// Exit codes: 0 ok, 1 runtime failure, 2 configuration error, 3 cutoff or
// memory limit.

#include <cstdlib>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "hybridcat/cli/experiment.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCutoff = 3;

const std::map<std::string, std::string> kFlagHelp = {
    {"protocol", "generate | swap-dv | swap-cv | teleport | wigner (for run/validate)"},
    {"alpha", "cat amplitude, value or start:stop:steps"},
    {"r", "tap reflectivity in (0, 1), value or start:stop:steps"},
    {"eta", "detector efficiency in (0, 1]"},
    {"variant", "hybrid Bell state 1..4"},
    {"model", "projector | physical"},
    {"ch", "teleported qubit H amplitude"},
    {"cv", "teleported qubit V amplitude"},
    {"resource", "ideal | generated"},
    {"seed", "seed for sampled outcomes"},
    {"out", "output directory"},
    {"wigner-grid", "points per axis for Wigner grids of conditional states"},
    {"cutoff", "CV Fock cutoff override"},
};

}  // namespace

int main(int argc, char** argv) {
    using namespace hybridcat;
    using namespace hybridcat::cli;

    CLI::App app{"Hybrid DV-CV entanglement simulator"};
    std::string command;
    app.add_option("command", command, "run | validate | generate | swap-dv | swap-cv | teleport | wigner")->required();

    std::map<std::string, std::string> flags;
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; flags override it");
    for (const auto& key : config_keys()) {
        if (key == "max-dim") continue;  // HYBRIDCAT_MAX_DIM
        app.add_option_function<std::string>("--" + key, [&flags, key](const std::string& v) { flags[key] = v; },
                                                 kFlagHelp.count(key) ? kFlagHelp.at(key) : "");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        ExperimentConfig config;
        if (!config_path.empty())
            for (const auto& [key, value] : read_config_file(config_path)) apply_setting(config, key, value);
        if (const char* env = std::getenv("HYBRIDCAT_MAX_DIM")) {
            try {
                apply_setting(config, "max-dim", env);
            } catch (const ConfigError& e) {
                throw ConfigError("HYBRIDCAT_MAX_DIM", e.what());
            }
        }
        const bool validate_only = command == "validate";
        if (command != "run" && !validate_only) {
            if (!parse_protocol(command)) throw ConfigError("command", "unknown command '" + command + "'");
            apply_setting(config, "protocol", command);
        }
        for (const auto& [key, value] : flags) apply_setting(config, key, value);

        if (validate_only) {
            std::cout << describe(config);
            return 0;
        }
        const auto output = run_experiment(config);
        write_outputs(output, config.out);
        std::cout << output.results_csv;
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CutoffTooSmall& e) {
        std::cerr << "cutoff error: " << e.what() << "\n";
        return kExitCutoff;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
