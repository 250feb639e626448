#pragma once

#include <string>
#include <vector>

#include "hybridcat/cli/config.hpp"
#include "hybridcat/cli/serialize.hpp"

namespace hybridcat::cli {

/// results.csv header; one row per (sweep point, outcome).
inline constexpr const char* kResultsHeader =
    "protocol,variant,model,resource,alpha,r,eta,outcome,probability,fidelity,negativity,fidelity_exact_ladder";

struct ExperimentOutput {
    std::string results_csv;
    json report;
    std::vector<std::pair<std::string, std::string>> wigner_files;  // file name, contents
};

/// Runs every sweep point in order. Deterministic in (config, seed).
/// Throws ConfigError, CutoffTooSmall (including DimensionLimitExceeded).
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Writes results.csv, report.json and the wigner_*.csv files into `dir`.
void write_outputs(const ExperimentOutput& output, const std::string& dir);

/// Resolved cutoffs, dimensions and memory estimates, without running.
/// Throws ConfigError; throws CutoffTooSmall when an explicit cutoff fails
/// the truncation check.
std::string describe(const ExperimentConfig& config);

/// Cutoff the run will use at this alpha.
int resolved_cutoff(const ExperimentConfig& config, double alpha);

/// Largest state-vector dimension the protocol allocates at this alpha.
std::size_t peak_dimension(const ExperimentConfig& config, double alpha);

}  // namespace hybridcat::cli
