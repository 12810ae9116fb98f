#ifndef UQCAL_BINNING_HPP
#define UQCAL_BINNING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uqcal/dataset.hpp"

namespace uqcal {

enum class TieKind { keep, random, abs_error_asc };

// Rule fixing the order of records that share an uncertainty value.
struct TiePolicy {
    TieKind kind = TieKind::keep;
    std::uint64_t seed = 0;  // consumed by the random policy only

    static TiePolicy keep() { return {TieKind::keep, 0}; }
    static TiePolicy random(std::uint64_t seed) { return {TieKind::random, seed}; }
    static TiePolicy by_abs_error() { return {TieKind::abs_error_asc, 0}; }

    std::string describe() const;
};

TieKind tie_kind_from_string(const std::string& name);
std::string to_string(TieKind kind);

// Indices of d sorted by non-decreasing uncertainty. Ties resolved per
// policy: intrinsic order (keep), a seeded shuffle (random), or ascending
// |E| (abs_error_asc). Always a bijection on {0..M-1}.
std::vector<std::size_t> order_records(const Dataset& d, const TiePolicy& policy);

// Equal-count boundaries: n+1 offsets, first 0, last m. The first (m mod n)
// bins take the extra record.
std::vector<std::size_t> equal_count_bins(std::size_t m, std::size_t n);

struct BinPartition {
    std::vector<std::size_t> permutation;
    std::vector<std::size_t> boundaries;

    std::size_t bins() const { return boundaries.size() - 1; }
    std::size_t bin_size(std::size_t b) const { return boundaries[b + 1] - boundaries[b]; }
};

BinPartition make_partition(const Dataset& d, const TiePolicy& policy, std::size_t n_bins);
BinPartition make_partition(const Dataset& d, std::vector<std::size_t> permutation,
                            std::size_t n_bins);

struct BinStats {
    std::size_t index = 0;  // 0-based bin number
    std::size_t n = 0;
    double rmv = 0.0;   // sqrt(mean u^2)
    double rmse = 0.0;  // sqrt(mean E^2)
    double zvar = 0.0;  // sample variance of E/u (n-1 denominator)
    double u_lo = 0.0;
    double u_hi = 0.0;
};

// Per-bin aggregates. Every bin must hold at least 2 records (the z-score
// variance is undefined otherwise).
std::vector<BinStats> bin_stats(const Dataset& d, const BinPartition& part);

} // namespace uqcal

#endif
