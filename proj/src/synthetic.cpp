#include "uqcal/synthetic.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "uqcal/errors.hpp"
#include "uqcal/format.hpp"
#include "uqcal/rng.hpp"

namespace uqcal {

namespace {

void check_law(const LogUniformLaw& law) {
    if (!(law.lo > 0.0) || !std::isfinite(law.lo) || !std::isfinite(law.hi))
        throw InputError("log-uniform law: lo must be finite and > 0");
    if (law.hi < law.lo)
        throw InputError("log-uniform law: hi must be >= lo");
}

void check_law(const FixedLevelsLaw& law) {
    if (law.values.empty())
        throw InputError("fixed-levels law: at least one level required");
    for (double v : law.values)
        if (!std::isfinite(v) || v <= 0.0)
            throw InputError("fixed-levels law: levels must be finite and > 0 (got " +
                             format_double(v) + ")");
    if (!law.weights.empty()) {
        if (law.weights.size() != law.values.size())
            throw InputError("fixed-levels law: weights and values differ in length");
        double total = 0.0;
        for (double w : law.weights) {
            if (!std::isfinite(w) || w < 0.0)
                throw InputError("fixed-levels law: weights must be finite and >= 0");
            total += w;
        }
        if (!(total > 0.0))
            throw InputError("fixed-levels law: weights must not all be zero");
    }
}

using DrawFn = std::function<double(rng::SplitMix64&)>;

DrawFn make_draw(const LogUniformLaw& law) {
    const double lo = std::log(law.lo);
    const double hi = std::log(law.hi);
    return [lo, hi](rng::SplitMix64& gen) {
        return std::exp(lo + (hi - lo) * gen.next_unit());
    };
}

DrawFn make_draw(const FixedLevelsLaw& law) {
    std::vector<double> weights = law.weights;
    if (weights.empty())
        weights.assign(law.values.size(), 1.0);
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    return [values = law.values, cumulative](rng::SplitMix64& gen) {
        const double target = cumulative.back() * gen.next_unit();
        for (std::size_t i = 0; i < cumulative.size(); ++i)
            if (target < cumulative[i])
                return values[i];
        return values.back();
    };
}

} // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.m < 2)
        throw InputError("synthetic spec: m must be >= 2");
    if (!(spec.miscalibration > 0.0) || !std::isfinite(spec.miscalibration))
        throw InputError("synthetic spec: miscalibration factor must be finite and > 0");
    std::visit([](const auto& law) { check_law(law); }, spec.law);
    const DrawFn draw = std::visit([](const auto& law) { return make_draw(law); }, spec.law);

    std::vector<double> errors(spec.m), uncertainties(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        rng::SplitMix64 gen(rng::substream_seed(spec.seed, i));
        const double u = draw(gen);
        const double eps = gen.next_normal();
        uncertainties[i] = u;
        errors[i] = spec.miscalibration * u * eps;
    }
    return Dataset(std::move(errors), std::move(uncertainties),
                   "synthetic(seed=" + std::to_string(spec.seed) +
                       ",c=" + format_double(spec.miscalibration) + ")");
}

} // namespace uqcal
