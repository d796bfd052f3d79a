#pragma once

#include <cstdint>
#include <random>

namespace oc {

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-job RNG stream: deterministic in (master seed, stream id), independent
// of thread scheduling so parallel runs replay exactly.
inline Rng make_rng(uint64_t master_seed, uint64_t stream = 0) {
    return Rng(splitmix64(splitmix64(master_seed) ^ (stream * 0xd1342543de82ef95ULL + 1)));
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace oc
