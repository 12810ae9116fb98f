#ifndef UQCAL_SYNTHETIC_HPP
#define UQCAL_SYNTHETIC_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "uqcal/dataset.hpp"

namespace uqcal {

// u drawn as exp(Uniform(ln lo, ln hi)); continuous, so ties have
// probability zero.
struct LogUniformLaw {
    double lo = 0.0;
    double hi = 0.0;
};

// u drawn from a finite set of levels; weights default to equal when empty.
struct FixedLevelsLaw {
    std::vector<double> values;
    std::vector<double> weights;
};

using UncertaintyLaw = std::variant<LogUniformLaw, FixedLevelsLaw>;

struct SyntheticSpec {
    std::size_t m = 0;
    UncertaintyLaw law;
    double miscalibration = 1.0;  // c: E_i = c * u_i * eps_i
    std::uint64_t seed = 0;
};

// Record i is generated from substream i of the spec seed, so the same spec
// reproduces the same dataset bit-for-bit and records are independent of m.
Dataset generate_synthetic(const SyntheticSpec& spec);

} // namespace uqcal

#endif
