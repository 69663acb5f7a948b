#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fima/rng.hpp"
#include "fima/stable.hpp"

namespace fima {

// Uniform time grid on [t_start, t_end] with step dt, extended trunc_T to the
// left for kernels with unbounded memory. Noise cells cover
// [t_start - trunc_T, t_end); output times are t_start + k dt.
struct GridSpec {
    double t_start;
    double t_end;
    double dt;
    double trunc_T;

    GridSpec(double t_start_, double t_end_, double dt_, double trunc_T_ = 0.0);

    std::size_t n_cells() const { return n_cells_; }
    double cell_left(std::size_t i) const { return t_start - trunc_T + static_cast<double>(i) * dt; }

    std::size_t n_times() const { return n_times_; }
    double time(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }

  private:
    std::size_t n_cells_;
    std::size_t n_times_;
};

// Discretized SaS noise: one increment per grid cell with per-cell scale
// dt^{1/alpha} * sigma, the scaling forced by the Lebesgue control measure.
struct NoisePath {
    GridSpec grid;
    StableLaw law;
    RandomStream stream;
    std::vector<double> increments;
};

struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;
    std::string meta;
};

}  // namespace fima
