#pragma once

#include <cstdint>
#include <random>

namespace dcfsim {

/**
 * Seeded random stream backed by std::mt19937_64.
 *
 * uniform01() takes the top 53 bits of one 64-bit draw, so the stream of
 * doubles is identical on every platform that implements mt19937_64.
 * exponential() is the inverse-CDF transform mean * -ln(u), u in (0, 1].
 */
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01();

    /// Uniform integer in [0, n]. Uses rejection sampling so every value is
    /// equally likely.
    std::uint64_t uniform_int(std::uint64_t n);

    /// One draw with the given mean. Throws InputError unless mean > 0.
    double exponential(double mean);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace dcfsim
