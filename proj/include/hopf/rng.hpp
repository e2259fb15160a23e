#pragma once

#include <cstdint>
#include <random>

namespace hopf {

// "H0PF" in ASCII; overridable via the HOPF_SEED environment variable in the CLI.
inline constexpr std::uint64_t kDefaultSeed = 0x48305046ull;

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Per-trial generator: seeding depends only on (seed, trial), so batch results
// are identical whether trials run serially or across OpenMP threads.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

} // namespace hopf
