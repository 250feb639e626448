#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybridcat/protocols.hpp"

namespace hybridcat::cli {

/// Bad configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("field '" + field + "': " + message), field(std::move(field)) {}
    std::string field;
};

/// "start:stop:steps" or a single value (steps = 1).
struct Sweep {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    std::vector<double> values() const;
};

Sweep parse_sweep(const std::string& field, const std::string& text);

enum class Protocol { Generate, SwapDv, SwapCv, Teleport, Wigner };
std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view text);

struct ExperimentConfig {
    Protocol protocol = Protocol::Generate;
    Sweep alpha{1.0, 1.0, 1};
    Sweep r{0.05, 0.05, 1};
    double eta = 1.0;
    int variant = 1;
    BsmModel model = BsmModel::ProjectorBSM;
    double ch = 1.0;
    double cv = 0.0;
    ResourceQuality::Kind resource = ResourceQuality::Kind::Ideal;
    std::uint64_t seed = 0;
    std::optional<int> cutoff;
    std::string out = "hybridcat_out";
    std::optional<int> wigner_grid;
    std::size_t max_dim = kDefaultMaxDim;
};

/// Keys accepted in config files, identical to the flag names without "--".
const std::vector<std::string>& config_keys();

/// Applies one key = value setting; throws ConfigError naming the key.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment. Throws ConfigError
/// (field "config") when the file cannot be read or a line is malformed.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Range checks on every field; throws ConfigError.
void validate_config(const ExperimentConfig& config);

}  // namespace hybridcat::cli
