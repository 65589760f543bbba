#pragma once

#include <cstdint>

namespace prpsim {

using NodeId = std::uint32_t;
using SimTime = double;  // seconds of simulated time

inline constexpr NodeId kBroadcast = 0xFFFFFFFFu;

struct Position {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

// Key for per-(origin, seq) discovery bookkeeping.
inline std::uint64_t discovery_key(NodeId origin, std::uint32_t seq) {
    return (std::uint64_t(origin) << 32) | seq;
}

}  // namespace prpsim
