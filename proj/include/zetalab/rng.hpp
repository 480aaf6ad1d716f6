#pragma once

#include <array>
#include <cstdint>
#include <numbers>

namespace zetalab {

/// xoshiro256++ seeded through SplitMix64. Output is bit-stable across platforms,
/// which is why the library never routes it through <random> distributions.
class Xoshiro256pp {
public:
    static constexpr std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        auto z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr explicit Xoshiro256pp(std::uint64_t seed = 1) {
        auto x = seed;
        for (auto& v : s_) v = splitmix64(x);
    }

    /// Independent child stream: a generator keyed by (seed, stream).
    static constexpr Xoshiro256pp stream(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t x = seed;
        const std::uint64_t a = splitmix64(x);
        std::uint64_t y = stream_index ^ 0xD1B54A32D192ED03ULL;
        const std::uint64_t b = splitmix64(y);
        return Xoshiro256pp(a ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)));
    }

    constexpr std::uint64_t next() {
        const auto result = rotl(s_[0] + s_[3], 23) + s_[0];
        const auto t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform01() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    /// Uniform angle on [0, 2 pi).
    constexpr double angle() {
        const double a = 2.0 * std::numbers::pi * uniform01();
        return a < 2.0 * std::numbers::pi ? a : 0.0;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

}  // namespace zetalab
