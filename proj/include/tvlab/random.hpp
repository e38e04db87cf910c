#pragma once

#include <cstdint>

#include "tvlab/error.hpp"
#include "tvlab/rational.hpp"

namespace tvlab {

/// Portable seeded stream (SplitMix64). The state advances by the golden
/// ratio increment 0x9E3779B97F4A7C15 and each output is mixed with the
/// constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB and shifts 30, 27, 31.
/// Integer ranges use rejection sampling, never std:: distributions, so the
/// same seed gives the same stream on every platform.
class SeededGenerator
{
public:
    explicit SeededGenerator(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        ++counter_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        if (hi < lo) throw InputError("SeededGenerator::uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

    /// Uniform rational num/den with num in [lo*den, hi*den].
    Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t den)
    {
        return Rational(Integer(uniform(lo * den, hi * den)), Integer(den));
    }

    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

}  // namespace tvlab
