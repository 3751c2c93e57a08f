#pragma once

#include <cstdint>
#include <initializer_list>

namespace antopt {

// SplitMix64 generator. Hand-rolled instead of <random> so that streams are
// reproducible byte-for-byte across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Lemire multiply-shift, no rejection loop.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from (seed, tag, indices...). Every ant
// gets its own generator keyed this way, so results do not depend on how work
// is scheduled across threads.
inline std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (std::uint64_t p : parts) {
        Rng mix(h ^ (p + 0x9e3779b97f4a7c15ull));
        h = mix.next_u64();
    }
    return h;
}

}  // namespace antopt
