#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fima/config.hpp"

namespace fima {

struct Assertion {
    std::string name;
    bool pass;
    std::string detail;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<Assertion> assertions;
    std::vector<std::string> artifacts;  // file names written under out_dir
    double runtime_seconds = 0.0;

    bool all_pass() const;
};

struct ExperimentInfo {
    std::string name;
    std::string claim;
    std::string runtime_hint;
};

const std::vector<ExperimentInfo>& experiment_registry();

// Runs one experiment, writing summary.json, meta.json and CSV artifacts
// under out_dir. Throws ConfigError for invalid configuration; numerical
// failures surface as QuadFailure/runtime_error.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir);

}  // namespace fima
