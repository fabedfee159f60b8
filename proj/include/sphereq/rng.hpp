#pragma once

#include <cstdint>
#include <random>

namespace sphereq {

// Seeded substream scheme: every consumer derives its generator from
// (master seed, stream id) so replications and ladder cells own independent
// streams regardless of execution order.  Stream ids are assigned by a
// documented counter convention, see experiment.cpp.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : engine_(mix(master_seed, stream_id)) {}

    explicit RngStream(std::uint64_t seed) : engine_(mix(seed, 0)) {}

    std::mt19937_64& engine() { return engine_; }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1], safe as a log argument.
    double uniform_pos() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal();      // standard normal, Box-Muller
    double exponential(double mean);

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sphereq
