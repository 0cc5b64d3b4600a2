// Counter-based RNG (Philox-4x32-10). A stream is addressed by
// (seed, stream_id); draws within a stream advance a 64-bit counter, so any
// path's randomness is reproducible independently of scheduling.
#pragma once

#include <cstdint>

namespace levymp {

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // uniform on [0, 1)
    double uniform();
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal();       // standard normal (Box-Muller, cached spare)
    double exponential();  // Exp(1)

    // Poisson via summed exponential waiting times; exact for the means used here.
    std::uint64_t poisson(double mean);

private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t ctr_[4];
    std::uint32_t buf_[4];
    int buf_pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace levymp
