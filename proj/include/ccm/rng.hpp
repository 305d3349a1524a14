#pragma once

#include <cstdint>
#include <random>

namespace ccm {

// splitmix64 finalizer; used to derive independent substream seeds from a
// master seed plus integer tags, so results are schedule-independent.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed) { return mix64(seed); }

template <typename... Tags>
uint64_t derive_seed(uint64_t seed, uint64_t tag, Tags... rest) {
    return derive_seed(mix64(seed ^ mix64(tag)), rest...);
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(mix64(seed)); }

}  // namespace ccm
