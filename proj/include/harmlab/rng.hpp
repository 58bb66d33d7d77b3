#pragma once

// Counter-based random numbers (Philox4x32-10). The draw at a given
// (master seed, stream, counter) triple is a pure function, so replicas can
// be generated in parallel, in any order, with bit-identical results.

#include <cmath>
#include <cstdint>

namespace harmlab {

struct SeedSpec {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

namespace detail {

inline void philox_round(std::uint32_t c[4], const std::uint32_t k[2]) {
    const std::uint64_t m0 = std::uint64_t{0xD2511F53} * c[0];
    const std::uint64_t m1 = std::uint64_t{0xCD9E8D57} * c[2];
    const std::uint32_t hi0 = std::uint32_t(m0 >> 32), lo0 = std::uint32_t(m0);
    const std::uint32_t hi1 = std::uint32_t(m1 >> 32), lo1 = std::uint32_t(m1);
    const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
    const std::uint32_t n3 = lo0;
    c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
}

inline void philox4x32_10(const std::uint32_t key[2], const std::uint32_t ctr_in[4], std::uint32_t out[4]) {
    std::uint32_t k[2] = {key[0], key[1]};
    for (int i = 0; i < 4; ++i) out[i] = ctr_in[i];
    for (int r = 0; r < 10; ++r) {
        philox_round(out, k);
        k[0] += 0x9E3779B9;
        k[1] += 0xBB67AE85;
    }
}

}  // namespace detail

// 64 uniform bits at (seed, counter).
inline std::uint64_t random_bits(const SeedSpec& seed, std::uint64_t counter) {
    const std::uint32_t key[2] = {std::uint32_t(seed.master), std::uint32_t(seed.master >> 32)};
    const std::uint32_t ctr[4] = {std::uint32_t(counter), std::uint32_t(counter >> 32),
                                  std::uint32_t(seed.stream), std::uint32_t(seed.stream >> 32)};
    std::uint32_t out[4];
    detail::philox4x32_10(key, ctr, out);
    return (std::uint64_t(out[1]) << 32) | out[0];
}

// Uniform double in the open interval (0, 1).
inline double random_uniform(const SeedSpec& seed, std::uint64_t counter) {
    return (double(random_bits(seed, counter) >> 11) + 0.5) * 0x1p-53;
}

// Standard normal draw; index i consumes counters 2i and 2i+1 (Box-Muller,
// cosine branch only, so each index is independent of scheduling).
inline double random_normal(const SeedSpec& seed, std::uint64_t index) {
    const double u1 = random_uniform(seed, 2 * index);
    const double u2 = random_uniform(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846264338327950288 * u2);
}

}  // namespace harmlab
