#pragma once

#include <cstdint>

namespace decim {

/// SplitMix64: the output is a fixed 64-bit mix of a counter advanced by the
/// golden-ratio increment 0x9E3779B97F4A7C15 (Steele/Lea/Burke, Vigna's
/// constants). Streams depend only on the seed, so runs are portable across
/// platforms and implementations.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1) with 53 significant bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in (-1, 1)
    double next_signed() { return 2.0 * next_double() - 1.0; }

private:
    uint64_t state_;
};

/// Derive a stream seed from a base seed and a job index, so that replicas
/// get decorrelated but reproducible streams.
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    SplitMix64 g(base ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return g.next_u64();
}

}  // namespace decim
