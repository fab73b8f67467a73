#pragma once

#include <cstdint>
#include <random>

namespace laclab {

// All randomness flows through mt19937_64, whose output is pinned bit-for-bit
// by the C++ standard, so estimates reproduce across platforms for a fixed
// seed. Bounded draws use rejection sampling (below), never
// std::uniform_int_distribution, whose mapping is implementation-defined.

inline constexpr const char* kRngName = "mt19937_64";

/// SplitMix64 step; used only to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for a numbered child stream (worker, corpus member, index n).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL * (stream + 1));
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Unbiased draw from {0, …, n-1}.
    std::uint64_t below(std::uint64_t n) {
        // Reject the low sliver that would bias the modulus.
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t r = engine_();
        while (r < threshold) r = engine_();
        return r % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace laclab
