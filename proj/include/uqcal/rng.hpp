#ifndef UQCAL_RNG_HPP
#define UQCAL_RNG_HPP

#include <cstdint>
#include <vector>

namespace uqcal::rng {

// SplitMix64 finalizer (Vigna 2015, public domain). Bijective avalanche mix.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Counter-based 64-bit generator: state advances by a fixed odd increment,
// output is mix64 of the state. Integer path is portable bit-for-bit.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }

    result_type operator()() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_unit() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1]; safe as a log() argument.
    double next_unit_open_low() {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal deviate via Box-Muller; consumes exactly two draws.
    double next_normal();

    // Unbiased integer in [0, n) by rejection. n must be >= 1.
    std::uint64_t next_below(std::uint64_t n);

private:
    std::uint64_t state_;
};

// Seed for substream `index` of a master seed. Distinct indices give
// distinct seeds (the pre-mix map is injective in index).
inline constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + kGolden * (index + 1));
}

// In-place Fisher-Yates shuffle driven by the given generator.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(gen.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace uqcal::rng

#endif
