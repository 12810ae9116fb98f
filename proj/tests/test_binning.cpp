#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"

#include "uqcal/binning.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/synthetic.hpp"

using uqcal::AnalysisError;
using uqcal::BinPartition;
using uqcal::Dataset;
using uqcal::TiePolicy;

namespace {

std::vector<uqcal::BinStats> stats_for(const Dataset& d, const TiePolicy& policy,
                                       std::size_t n) {
    return uqcal::bin_stats(d, uqcal::make_partition(d, policy, n));
}

bool same_bits(const std::vector<uqcal::BinStats>& a, const std::vector<uqcal::BinStats>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].rmv != b[i].rmv || a[i].rmse != b[i].rmse || a[i].zvar != b[i].zvar ||
            a[i].n != b[i].n)
            return false;
    return true;
}

} // namespace

TEST_CASE("keep order sorts by uncertainty, ties in intrinsic order") {
    const Dataset d({0, 0, 0}, {3, 1, 2});
    CHECK(uqcal::order_records(d, TiePolicy::keep()) == std::vector<std::size_t>{1, 2, 0});

    const Dataset ties({9, 8, 7}, {1, 1, 1});
    CHECK(uqcal::order_records(ties, TiePolicy::keep()) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("abs-error order ranks ties by |E| ascending") {
    const Dataset d({5, -2}, {1, 1});
    CHECK(uqcal::order_records(d, TiePolicy::by_abs_error()) ==
          std::vector<std::size_t>{1, 0});

    const Dataset mixed({-4, 1, 3, 2}, {2, 1, 2, 2});
    CHECK(uqcal::order_records(mixed, TiePolicy::by_abs_error()) ==
          std::vector<std::size_t>{1, 3, 2, 0});
}

TEST_CASE("random order shuffles only inside tie groups") {
    const Dataset d({1, 2, 3, 4, 5, 6}, {2, 1, 2, 1, 2, 3});
    const auto& u = d.uncertainties();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto idx = uqcal::order_records(d, TiePolicy::random(seed));
        REQUIRE(idx.size() == d.size());
        for (std::size_t i = 1; i < idx.size(); ++i)
            CHECK(u[idx[i - 1]] <= u[idx[i]]);  // still sorted by u
        // membership per stratum is fixed; only the order inside moves
        std::map<double, std::vector<std::size_t>> groups;
        for (std::size_t i : idx)
            groups[u[i]].push_back(i);
        CHECK(groups[1.0].size() == 2);
        CHECK(groups[2.0].size() == 3);
        CHECK(groups[3.0] == std::vector<std::size_t>{5});
    }
    CHECK(uqcal::order_records(d, TiePolicy::random(11)) ==
          uqcal::order_records(d, TiePolicy::random(11)));
}

TEST_CASE("random order visits every within-tie arrangement") {
    const Dataset d({1, 2, 3}, {5, 5, 5});
    std::map<std::vector<std::size_t>, int> seen;
    for (std::uint64_t seed = 0; seed < 600; ++seed)
        ++seen[uqcal::order_records(d, TiePolicy::random(seed))];
    CHECK(seen.size() == 6);
}

TEST_CASE("equal-count boundaries spread the remainder forward") {
    CHECK(uqcal::equal_count_bins(6, 3) == std::vector<std::size_t>{0, 2, 4, 6});
    CHECK(uqcal::equal_count_bins(10, 3) == std::vector<std::size_t>{0, 4, 7, 10});
    CHECK(uqcal::equal_count_bins(5, 1) == std::vector<std::size_t>{0, 5});
    CHECK_THROWS_AS(uqcal::equal_count_bins(5, 6), AnalysisError);
    CHECK_THROWS_AS(uqcal::equal_count_bins(5, 0), AnalysisError);
}

TEST_CASE("partition covers every record exactly once") {
    const Dataset d = uqcal::generate_synthetic({103, uqcal::LogUniformLaw{0.1, 1.0}, 1.0, 3});
    const BinPartition part = uqcal::make_partition(d, TiePolicy::keep(), 7);
    REQUIRE(part.bins() == 7);
    std::vector<std::size_t> seen(part.permutation);
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i)
        CHECK(seen[i] == i);
    std::size_t total = 0;
    for (std::size_t b = 0; b < part.bins(); ++b)
        total += part.bin_size(b);
    CHECK(total == d.size());
}

TEST_CASE("make_partition rejects a foreign permutation") {
    const Dataset d({1, 2, 3, 4}, {1, 2, 3, 4});
    CHECK_THROWS_AS(uqcal::make_partition(d, std::vector<std::size_t>{0, 1}, 2),
                    AnalysisError);
}

TEST_CASE("bin statistics on frozen two-record bins") {
    const Dataset d({1.0, -1.0}, {1.0, 1.0});
    const auto stats = stats_for(d, TiePolicy::keep(), 1);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].n == 2);
    CHECK(stats[0].rmv == 1.0);
    CHECK(stats[0].rmse == 1.0);
    CHECK(stats[0].zvar == 2.0);
    CHECK(stats[0].u_lo == 1.0);
    CHECK(stats[0].u_hi == 1.0);

    const Dataset wide({1.0, -1.0}, {2.0, 2.0});
    const auto w = stats_for(wide, TiePolicy::keep(), 1);
    CHECK(w[0].rmv == 2.0);
    CHECK(w[0].rmse == 1.0);
    CHECK(w[0].zvar == 0.5);

    const Dataset unit({1.0, 0.0, -1.0}, {1.0, 1.0, 1.0});
    CHECK(stats_for(unit, TiePolicy::keep(), 1)[0].zvar == 1.0);
}

TEST_CASE("a one-record bin is a statistics error") {
    const Dataset d({1, 2, 3}, {1, 2, 3});
    CHECK_THROWS_AS(stats_for(d, TiePolicy::keep(), 2), AnalysisError);
}

TEST_CASE("tie-free data gives identical stats under every policy") {
    const Dataset d = uqcal::generate_synthetic({200, uqcal::LogUniformLaw{0.01, 0.1}, 1.2, 8});
    const auto keep = stats_for(d, TiePolicy::keep(), 7);
    CHECK(same_bits(keep, stats_for(d, TiePolicy::by_abs_error(), 7)));
    for (std::uint64_t seed : {0ull, 1ull, 99ull, 12345ull, 500ull})
        CHECK(same_bits(keep, stats_for(d, TiePolicy::random(seed), 7)));
}

TEST_CASE("stats do not depend on the stored record order") {
    const Dataset d = uqcal::generate_synthetic({150, uqcal::LogUniformLaw{0.5, 2.0}, 1.0, 21});
    std::vector<double> e(d.errors().rbegin(), d.errors().rend());
    std::vector<double> u(d.uncertainties().rbegin(), d.uncertainties().rend());
    const Dataset reversed(std::move(e), std::move(u));
    CHECK(same_bits(stats_for(d, TiePolicy::keep(), 5),
                    stats_for(reversed, TiePolicy::keep(), 5)));
}

TEST_CASE("doubling u scales bin stats exactly") {
    const Dataset d = uqcal::generate_synthetic({240, uqcal::LogUniformLaw{0.01, 0.1}, 1.3, 6});
    std::vector<double> u2;
    for (double u : d.uncertainties())
        u2.push_back(2.0 * u);
    const Dataset scaled(std::vector<double>(d.errors()), std::move(u2));
    const auto base = stats_for(d, TiePolicy::keep(), 8);
    const auto two = stats_for(scaled, TiePolicy::keep(), 8);
    REQUIRE(base.size() == two.size());
    for (std::size_t b = 0; b < base.size(); ++b) {
        CHECK(two[b].rmv == 2.0 * base[b].rmv);     // exact in binary
        CHECK(two[b].rmse == base[b].rmse);
        CHECK(two[b].zvar == base[b].zvar / 4.0);
    }
}

TEST_CASE("general scaling holds to rounding") {
    const Dataset d = uqcal::generate_synthetic({240, uqcal::LogUniformLaw{0.01, 0.1}, 0.9, 16});
    std::vector<double> u3;
    for (double u : d.uncertainties())
        u3.push_back(3.0 * u);
    const Dataset scaled(std::vector<double>(d.errors()), std::move(u3));
    const auto base = stats_for(d, TiePolicy::keep(), 6);
    const auto three = stats_for(scaled, TiePolicy::keep(), 6);
    for (std::size_t b = 0; b < base.size(); ++b) {
        CHECK(three[b].rmv == doctest::Approx(3.0 * base[b].rmv).epsilon(1e-12));
        CHECK(three[b].zvar == doctest::Approx(base[b].zvar / 9.0).epsilon(1e-12));
    }
}

TEST_CASE("tie policy descriptors") {
    CHECK(TiePolicy::keep().describe() == "keep");
    CHECK(TiePolicy::random(42).describe() == "random(seed=42)");
    CHECK(TiePolicy::by_abs_error().describe() == "abs-error");
    CHECK(uqcal::tie_kind_from_string("keep") == uqcal::TieKind::keep);
    CHECK(uqcal::tie_kind_from_string("random") == uqcal::TieKind::random);
    CHECK(uqcal::tie_kind_from_string("abs-error") == uqcal::TieKind::abs_error_asc);
    CHECK_THROWS_AS(uqcal::tie_kind_from_string("bogus"), uqcal::InputError);
}
