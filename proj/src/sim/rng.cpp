#include "dcfsim/sim/rng.hpp"

#include "dcfsim/sim/errors.hpp"

#include <cmath>
#include <limits>

namespace dcfsim {

double
Rng::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t
Rng::uniform_int(std::uint64_t n)
{
    if (n == std::numeric_limits<std::uint64_t>::max())
        return engine_();
    const std::uint64_t range = n + 1;
    // Largest multiple of range that fits; draws above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % range;
}

double
Rng::exponential(double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw InputError("exponential: mean must be > 0");
    const double u = 1.0 - uniform01(); // (0, 1]
    return -mean * std::log(u);
}

} // namespace dcfsim
