#include "uqcal/rng.hpp"

#include <cmath>
#include <numbers>

namespace uqcal::rng {

double SplitMix64::next_normal() {
    // Non-polar Box-Muller keeps the draw count fixed at two, so every
    // substream position is independent of the values drawn before it.
    double u1 = next_unit_open_low();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
    if (n <= 1)
        return 0;
    // Rejection below the largest multiple of n keeps the draw unbiased.
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
        x = (*this)();
    } while (x >= limit);
    return x % n;
}

} // namespace uqcal::rng
