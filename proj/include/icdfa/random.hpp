#ifndef ICDFA_RANDOM_HPP
#define ICDFA_RANDOM_HPP

#include "icdfa/bigcount.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace icdfa {

/// Seedable counter-based generator (SplitMix64 output function over a
/// Weyl counter). Satisfies std::uniform_random_bit_generator.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t seed = 0) noexcept : seed_(seed), counter_(0) {}

    /// Independent stream for one worker of a multi-worker run.
    static RandomSource for_worker(std::uint64_t seed, std::uint64_t worker) noexcept
    {
        return RandomSource(mix(seed ^ mix(worker + 0x632be59bd9b4e019ULL)));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix(seed_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform in [0, bound), by rejection on the smallest covering power of two.
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound == 0)
            throw std::invalid_argument("empty range");
        if (bound == 1)
            return 0;
        const std::uint64_t top = bound - 1;
        const int bits = 64 - __builtin_clzll(top);
        const std::uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
        for (;;) {
            std::uint64_t r = (*this)() & mask;
            if (r < bound)
                return r;
        }
    }

    /// Uniform in [0, bound) for arbitrary-precision bounds.
    BigCount below(const BigCount& bound)
    {
        if (bound <= 0)
            throw std::invalid_argument("empty range");
        if (bound <= BigCount(std::numeric_limits<std::uint64_t>::max()))
            return BigCount(below(static_cast<std::uint64_t>(bound)));
        const std::size_t bits = boost::multiprecision::msb(BigCount(bound - 1)) + 1;
        const std::size_t words = (bits + 63) / 64;
        const std::size_t spare = words * 64 - bits;
        for (;;) {
            BigCount r = 0;
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t chunk = (*this)();
                if (w == 0 && spare)
                    chunk >>= spare;
                r <<= 64;
                r |= chunk;
            }
            if (r < bound)
                return r;
        }
    }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace icdfa

#endif
