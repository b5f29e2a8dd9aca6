#ifndef MZSIM_RNG_HPP
#define MZSIM_RNG_HPP

#include <cstdint>

namespace mzsim {

// splitmix64: used to derive independent sub-stream seeds (per phase point,
// per trial, per resample) from a user seed plus an index.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

// Uniform double in [0, 1) from successive splitmix64 states. Portable
// (no distribution objects involved).
struct UniformStream {
    std::uint64_t state;
    explicit UniformStream(std::uint64_t seed) : state(seed) {}
    double next() {
        state = splitmix64(state);
        return double(state >> 11) * 0x1.0p-53;
    }
};

}  // namespace mzsim

#endif
