#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace prpsim {

// Named random streams. Each stochastic subsystem draws from its own
// stream so that changing one (e.g. mobility) does not perturb another's
// draws between runs with the same seed.
enum class StreamLabel { Mobility, KChoice, FlowSelection, Loss };

// Throws std::invalid_argument for anything outside the fixed label set.
StreamLabel stream_label_from(const std::string& name);

class RngStream {
  public:
    RngStream(std::uint64_t seed, StreamLabel label);

    std::uint64_t next_bits();

    // [0, 1). Derived from the raw bits directly so sequences do not depend
    // on the standard library's distribution implementations.
    double uniform01();

    // [lo, hi)
    double uniform(double lo, double hi);

    // Inclusive [lo, hi], unbiased via rejection.
    long uniform_int(long lo, long hi);

  private:
    std::mt19937_64 eng_;
};

}  // namespace prpsim
