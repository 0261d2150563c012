// Deterministic stream derivation: every run and every node gets its own
// generator derived from the master seed, so one entity's draws never perturb
// another's regardless of event interleaving.
#pragma once

#include <cstdint>
#include <random>

namespace dstrust::rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives a child seed from (parent seed, stream index).
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + kGolden));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(derive(seed, stream));
}

}  // namespace dstrust::rng
