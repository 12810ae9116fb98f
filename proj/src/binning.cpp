#include "uqcal/binning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uqcal/errors.hpp"
#include "uqcal/rng.hpp"

namespace uqcal {

std::string TiePolicy::describe() const {
    switch (kind) {
        case TieKind::keep: return "keep";
        case TieKind::random: return "random(seed=" + std::to_string(seed) + ")";
        case TieKind::abs_error_asc: return "abs-error";
    }
    return "?";
}

TieKind tie_kind_from_string(const std::string& name) {
    if (name == "keep") return TieKind::keep;
    if (name == "random") return TieKind::random;
    if (name == "abs-error") return TieKind::abs_error_asc;
    throw InputError("unknown tie policy '" + name + "' (expected keep, random or abs-error)");
}

std::string to_string(TieKind kind) {
    switch (kind) {
        case TieKind::keep: return "keep";
        case TieKind::random: return "random";
        case TieKind::abs_error_asc: return "abs-error";
    }
    return "?";
}

std::vector<std::size_t> order_records(const Dataset& d, const TiePolicy& policy) {
    const auto& u = d.uncertainties();
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    switch (policy.kind) {
        case TieKind::keep:
            std::stable_sort(idx.begin(), idx.end(),
                             [&u](std::size_t a, std::size_t b) { return u[a] < u[b]; });
            break;
        case TieKind::random: {
            // Shuffling first and stable-sorting after is equivalent to an
            // independent uniform shuffle inside every tie group.
            rng::SplitMix64 gen(policy.seed);
            rng::shuffle(idx, gen);
            std::stable_sort(idx.begin(), idx.end(),
                             [&u](std::size_t a, std::size_t b) { return u[a] < u[b]; });
            break;
        }
        case TieKind::abs_error_asc: {
            const auto& e = d.errors();
            std::stable_sort(idx.begin(), idx.end(), [&u, &e](std::size_t a, std::size_t b) {
                if (u[a] != u[b])
                    return u[a] < u[b];
                return std::abs(e[a]) < std::abs(e[b]);
            });
            break;
        }
    }
    return idx;
}

std::vector<std::size_t> equal_count_bins(std::size_t m, std::size_t n) {
    if (n < 1 || n > m)
        throw AnalysisError("partition error: need 1 <= bins <= records, got bins=" +
                            std::to_string(n) + " for " + std::to_string(m) + " records");
    const std::size_t base = m / n;
    const std::size_t extra = m % n;
    std::vector<std::size_t> boundaries(n + 1);
    boundaries[0] = 0;
    for (std::size_t b = 0; b < n; ++b)
        boundaries[b + 1] = boundaries[b] + base + (b < extra ? 1 : 0);
    return boundaries;
}

BinPartition make_partition(const Dataset& d, const TiePolicy& policy, std::size_t n_bins) {
    return make_partition(d, order_records(d, policy), n_bins);
}

BinPartition make_partition(const Dataset& d, std::vector<std::size_t> permutation,
                            std::size_t n_bins) {
    if (permutation.size() != d.size())
        throw AnalysisError("partition error: permutation length does not match dataset");
    return BinPartition{std::move(permutation), equal_count_bins(d.size(), n_bins)};
}

std::vector<BinStats> bin_stats(const Dataset& d, const BinPartition& part) {
    const auto& u = d.uncertainties();
    const auto& e = d.errors();
    std::vector<BinStats> out;
    out.reserve(part.bins());
    for (std::size_t b = 0; b < part.bins(); ++b) {
        const std::size_t lo = part.boundaries[b];
        const std::size_t hi = part.boundaries[b + 1];
        const std::size_t n = hi - lo;
        if (n < 2)
            throw AnalysisError("statistics error: bin " + std::to_string(b + 1) +
                                " has " + std::to_string(n) +
                                " record(s); z-score variance needs at least 2");
        double sum_u2 = 0.0, sum_e2 = 0.0, sum_z = 0.0;
        double u_min = u[part.permutation[lo]], u_max = u_min;
        for (std::size_t k = lo; k < hi; ++k) {
            const std::size_t i = part.permutation[k];
            sum_u2 += u[i] * u[i];
            sum_e2 += e[i] * e[i];
            sum_z += e[i] / u[i];
            u_min = std::min(u_min, u[i]);
            u_max = std::max(u_max, u[i]);
        }
        const double z_mean = sum_z / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            const std::size_t i = part.permutation[k];
            const double dz = e[i] / u[i] - z_mean;
            ss += dz * dz;
        }
        BinStats s;
        s.index = b;
        s.n = n;
        s.rmv = std::sqrt(sum_u2 / static_cast<double>(n));
        s.rmse = std::sqrt(sum_e2 / static_cast<double>(n));
        s.zvar = ss / static_cast<double>(n - 1);
        s.u_lo = u_min;
        s.u_hi = u_max;
        out.push_back(s);
    }
    return out;
}

} // namespace uqcal
