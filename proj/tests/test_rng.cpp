#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"

#include "uqcal/rng.hpp"

using uqcal::rng::SplitMix64;

namespace {

// Reference recurrence transcribed straight from the published fixed-increment
// splitmix64 (Vigna 2015, public domain), kept separate from the library.
std::uint64_t reference_next(std::uint64_t& state) {
    std::uint64_t z = (state += UINT64_C(0x9E3779B97F4A7C15));
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

} // namespace

TEST_CASE("splitmix64 matches the published recurrence") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 0xDEADBEEFull, ~0ull}) {
        SplitMix64 gen(seed);
        std::uint64_t state = seed;
        for (int i = 0; i < 64; ++i)
            CHECK(gen() == reference_next(state));
    }
}

TEST_CASE("substream seeds are distinct and reproducible") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 10000; ++k)
        seen.insert(uqcal::rng::substream_seed(7, k));
    CHECK(seen.size() == 10000);
    CHECK(uqcal::rng::substream_seed(7, 3) == uqcal::rng::substream_seed(7, 3));
    CHECK(uqcal::rng::substream_seed(7, 3) != uqcal::rng::substream_seed(8, 3));
}

TEST_CASE("unit draws stay inside their half-open ranges") {
    SplitMix64 gen(123);
    for (int i = 0; i < 20000; ++i) {
        const double a = gen.next_unit();
        CHECK(a >= 0.0);
        CHECK(a < 1.0);
        const double b = gen.next_unit_open_low();
        CHECK(b > 0.0);
        CHECK(b <= 1.0);
    }
}

TEST_CASE("next_below is bounded and roughly uniform") {
    SplitMix64 gen(99);
    CHECK(gen.next_below(1) == 0);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t v = gen.next_below(10);
        REQUIRE(v < 10);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int c : counts) {  // +-5 sigma around 1000
        CHECK(c > 850);
        CHECK(c < 1150);
    }
}

TEST_CASE("next_normal consumes exactly two raw draws") {
    SplitMix64 a(555), b(555);
    (void)a.next_normal();
    (void)b();
    (void)b();
    CHECK(a() == b());
}

TEST_CASE("next_normal moments") {
    SplitMix64 gen(2024);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = gen.next_normal();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("shuffle is a seeded permutation") {
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
    SplitMix64 gen(31);
    uqcal::rng::shuffle(v, gen);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});

    std::vector<int> again{0, 1, 2, 3, 4, 5, 6, 7};
    SplitMix64 gen2(31);
    uqcal::rng::shuffle(again, gen2);
    CHECK(again == v);
}

TEST_CASE("shuffle hits all orderings of three elements evenly") {
    std::map<std::vector<int>, int> counts;
    for (std::uint64_t s = 0; s < 6000; ++s) {
        std::vector<int> v{0, 1, 2};
        SplitMix64 gen(s);
        uqcal::rng::shuffle(v, gen);
        ++counts[v];
    }
    CHECK(counts.size() == 6);
    for (const auto& [perm, c] : counts) {  // +-5 sigma around 1000
        CHECK(c > 855);
        CHECK(c < 1145);
    }
}
