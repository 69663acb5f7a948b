#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fima/dependence.hpp"
#include "fima/fima_process.hpp"

namespace fima {

// Thrown for malformed or out-of-range configuration (CLI exit status 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed experiment configuration. The file format is key = value with
// [section] headers; flags override file values.
struct ExperimentConfig {
    std::string experiment;

    // [model]
    double alpha = 1.5;
    double d = 0.2;
    double sigma = 1.0;
    std::string kernel_spec = "exp(1.0)";

    // [grid]
    double dt = 0.0078125;  // 2^-7
    double t_start = 0.0;
    double t_end = 2.0;
    double trunc_T = 32.0;

    // [ensemble]
    std::size_t replicas = 1000;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = leave runtime default

    // [quadrature]
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;

    // [output]
    std::string out_dir = "out";

    // [dependence]
    double theta1 = 1.0;
    double theta2 = 1.0;
    std::vector<double> lags = {8, 16, 32, 64, 128, 256, 512};

    // [lln]
    std::string lln_times = "natural";  // natural | power
    double lln_growth_K = 1.0;
    double lln_growth_beta = 2.0;
    std::size_t lln_n_max = 4096;
    double lln_p = 0.7;

    // Builders; each re-validates the downstream type invariants and throws
    // ConfigError with a precise diagnostic.
    Kernel make_kernel() const;
    StableLaw make_law() const;
    FracOrder make_order() const;
    FimaModel make_model() const;
    QuadSpec make_quad() const;

    void validate() const;
};

ExperimentConfig parse_config_file(const std::filesystem::path& file);
ExperimentConfig parse_config_text(const std::string& text);

// Kernel vocabulary: exp(c), gamma(k,c), truncexp(c,b), indicator(a,b).
Kernel parse_kernel_spec(const std::string& spec);

}  // namespace fima
