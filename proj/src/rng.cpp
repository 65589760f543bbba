#include "prpsim/rng.hpp"

#include <stdexcept>

namespace prpsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

StreamLabel stream_label_from(const std::string& name) {
    if (name == "mobility") return StreamLabel::Mobility;
    if (name == "k_choice") return StreamLabel::KChoice;
    if (name == "flow_selection") return StreamLabel::FlowSelection;
    if (name == "loss") return StreamLabel::Loss;
    throw std::invalid_argument("unknown rng stream label: " + name);
}

RngStream::RngStream(std::uint64_t seed, StreamLabel label)
    : eng_(splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(label) + 1)) {}

std::uint64_t RngStream::next_bits() {
    return eng_();
}

double RngStream::uniform01() {
    return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

long RngStream::uniform_int(long lo, long hi) {
    const std::uint64_t n = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_bits();
    } while (x >= limit);
    return lo + static_cast<long>(x % n);
}

}  // namespace prpsim
