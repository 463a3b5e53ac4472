// rng.hpp
//
// Deterministic random source used everywhere a seed appears in the public
// API. The standard <random> engines are portable but the distributions are
// not, so uniform and triangular draws are implemented here directly and the
// same seed yields the same bytes on every platform.

#ifndef MIBWARDEN_RNG_HPP
#define MIBWARDEN_RNG_HPP

#include <cstdint>
#include <vector>

namespace mibwarden {

/// xoshiro256** seeded through splitmix64
class rng {
public:
    explicit rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto &word : state_)
            word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// uniform integer in [0, bound), bound > 0; rejection sampling, unbiased
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

    /// uniform real in [0, 1) with 53 bits of precision
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform real in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// symmetric triangular distribution centered at `center` with support
    /// [center - half_width, center + half_width]
    double triangular(double center, double half_width) {
        const double u = unit() + unit() - 1.0;
        return center + half_width * u;
    }

    /// Fisher-Yates shuffle, descending index order
    template <typename T>
    void shuffle(std::vector<T> &items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t &x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

} // namespace mibwarden

#endif // MIBWARDEN_RNG_HPP
