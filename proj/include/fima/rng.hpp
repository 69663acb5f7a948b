#pragma once

#include <cstdint>
#include <cmath>

namespace fima {

// Identifies one independent noise stream. Draws are a pure function of
// (master_seed, stream_index, draw counter), so parallel ensembles partition
// work by stream_index and stay reproducible under any scheduling.
struct RandomStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based generator: the n-th output is mix64(key + n*gamma), so any
// draw is addressable by its counter and streams never share state.
class CounterRng {
  public:
    explicit CounterRng(RandomStream s)
        : key_(detail::mix64(detail::mix64(s.master_seed + 0x9E3779B97F4A7C15ull) ^
                             detail::mix64(s.stream_index + 0xD1B54A32D192ED03ull))) {}

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ull;
        return detail::mix64(key_ + counter_);
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform01()); }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace fima
