#pragma once

#include <cstdint>
#include <initializer_list>

namespace exc {

/// splitmix64 step, used for seeding and for hashing seed components.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stable combination of seed components (master seed, replicate index,
/// stage, ...) into one stream seed. Order-sensitive by construction.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t acc = 0x243f6a8885a308d3ULL;  // arbitrary nonzero start
    for (std::uint64_t p : parts) {
        acc ^= p + 0x9e3779b97f4a7c15ULL + (acc << 6) + (acc >> 2);
        std::uint64_t s = acc;
        acc = splitmix64(s);
    }
    return acc;
}

/// xoshiro256++ with deterministic, platform-independent output.
/// The standard library distributions are implementation-defined, so all
/// random values in the library are produced from this generator plus
/// explicit transforms; results are bit-reproducible for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0,1), never exactly 0 or 1.
    double next_uniform() {
        // 53 random bits, then shift into the open interval.
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u + 0x1.0p-54;
    }

    /// Standard normal via inverse-CDF transform (see normal.hpp).
    double next_normal();

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

}  // namespace exc
