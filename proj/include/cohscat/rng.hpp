// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace cohscat {
namespace detail {

// splitmix64; used to derive independent stream seeds from a user seed.
inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
{
    return stream == 0 ? seed : splitmix64(seed + stream * 0x9E3779B97F4A7C15ull);
}

// Uniform double in [0, 1) from the top 53 bits. mt19937_64 output is
// specified by the standard, so sequences are reproducible across
// platforms, unlike std::uniform_real_distribution.
inline double uniform_double(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace detail
}  // namespace cohscat
