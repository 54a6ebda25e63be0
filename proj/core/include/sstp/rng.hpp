#pragma once

#include <cstdint>
#include <random>

namespace sstp {

/// Seedable deterministic random source. Same seed, same stream, on every
/// platform: keys and index draws are derived from raw mt19937_64 output
/// instead of the (implementation-defined) standard distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0,1).
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0,n). n must be > 0.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
} // namespace detail

/// Independent stream seed for (master, a, b), e.g. (seed, iteration,
/// scenario). Stable across runs; used so that scenario-parallel execution
/// is order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
    std::uint64_t h = detail::splitmix64(master);
    h = detail::splitmix64(h ^ a);
    h = detail::splitmix64(h ^ b);
    return h;
}

} // namespace sstp
