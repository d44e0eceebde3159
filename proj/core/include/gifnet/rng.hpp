#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 construction).

#include <array>
#include <cstddef>
#include <cstdint>

namespace gifnet {

using philox_ctr = std::array<std::uint32_t, 4>;
using philox_key = std::array<std::uint32_t, 2>;

constexpr philox_ctr philox4x32_10(philox_ctr c, philox_key k) {
    constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(m0)*c[0];
        const std::uint64_t p1 = std::uint64_t(m1)*c[2];
        const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += w0;
        k[1] += w1;
    }
    return c;
}

// Uniforms for one (trial, step): draw i is taken from counter block i/2.
class step_stream {
public:
    step_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t step):
        key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
        trial_(trial), step_(step) {}

    // uniform in [0, 1) with 53 random bits
    double uniform(std::uint64_t i) const {
        philox_ctr c{std::uint32_t(step_), std::uint32_t(step_ >> 32), std::uint32_t(trial_), std::uint32_t(i/2)};
        auto r = philox4x32_10(c, key_);
        const std::size_t o = 2*(i%2);
        const std::uint64_t bits = (std::uint64_t(r[o]) << 32 | r[o + 1]) >> 11;
        return double(bits)*0x1.0p-53;
    }

private:
    philox_key key_;
    std::uint64_t trial_, step_;
};

} // namespace gifnet
