#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace netdiv {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-based stream derivation: (master, component, index) -> seed.
// Streams never depend on how many draws another stream consumed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                                 std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ fnv1a64(component)) + splitmix64(index + 1));
}

inline Rng make_rng(std::uint64_t master, std::string_view component, std::uint64_t index = 0) {
    return Rng(derive_seed(master, component, index));
}

}  // namespace netdiv
