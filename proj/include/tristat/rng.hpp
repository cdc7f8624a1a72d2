#pragma once

#include <cstdint>
#include <random>

namespace tristat {

// Deterministic random source. std::mt19937_64 has a standard-specified output
// sequence; the distributions below are hand-rolled because the standard
// library's are implementation-defined, and generated graphs must be
// bit-identical for a given seed everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Unbiased integer in [0, n). n must be > 0.
    std::uint64_t uniform(std::uint64_t n) {
        const std::uint64_t reject_below = (-n) % n;  // 2^64 mod n
        std::uint64_t x = engine_();
        while (x < reject_below) x = engine_();
        return x % n;
    }

    std::uint32_t uniform32(std::uint32_t n) { return static_cast<std::uint32_t>(uniform(n)); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

// Stateless mix for deriving independent substream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace tristat
