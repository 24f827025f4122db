#include "gain/rng.hpp"

#include <cmath>
#include <numbers>

namespace gain {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 nudged away from 0 so log stays finite.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

RngStream RngStream::substream(std::string_view label, std::uint64_t a,
                               std::uint64_t b, std::uint64_t c) const {
    // FNV-1a over the label, then splitmix the lot together.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : label) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = mix64(seed_ ^ h);
    s = mix64(s ^ mix64(a + 1));
    s = mix64(s ^ mix64(b + 2));
    s = mix64(s ^ mix64(c + 3));
    return RngStream(s);
}

}  // namespace gain
