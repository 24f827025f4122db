#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gain {

// Deterministic random stream. The engine is std::mt19937_64 (exactly
// specified by the standard, so sequences are identical across platforms);
// the value mappings are done by hand because the standard library
// distributions are implementation-defined.
//
// All randomness in a run flows from one 64-bit seed through named
// sub-streams ("data", "hint", "noise", "init", ...), optionally indexed,
// so independent components can be varied or parallelized without
// perturbing each other.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on {0, 1, ..., n-1}. Unbiased via rejection.
    std::uint64_t uniform_index(std::uint64_t n);

    // Standard normal via Box-Muller (pairs cached).
    double normal();

    // Derived stream: deterministic function of (seed, label, indices).
    RngStream substream(std::string_view label, std::uint64_t a = 0,
                        std::uint64_t b = 0, std::uint64_t c = 0) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// splitmix64 finalizer; used to mix seeds and label hashes.
std::uint64_t mix64(std::uint64_t x);

}  // namespace gain
