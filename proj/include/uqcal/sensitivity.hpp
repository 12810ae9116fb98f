#ifndef UQCAL_SENSITIVITY_HPP
#define UQCAL_SENSITIVITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uqcal/dataset.hpp"
#include "uqcal/intercept.hpp"
#include "uqcal/metrics.hpp"

namespace uqcal {

// Monte-Carlo spread of a binned metric under random tie orderings, with
// the unperturbed and adversarial orderings for context. Draw k always uses
// the substream seed derived from (master_seed, k), so reports are
// reproducible and independent of the execution schedule.
struct SensitivityReport {
    MetricKind metric = MetricKind::ence;
    std::size_t n_bins = 0;
    std::size_t n_draws = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> samples;     // per-draw values, NaN where a draw failed
    double mean = 0.0;               // over successful draws
    double sd = 0.0;                 // sample standard deviation over successful draws
    double worst_case_value = 0.0;   // ordering by ascending |E| inside ties
    double keep_order_value = 0.0;   // intrinsic order inside ties
    std::vector<std::string> draw_errors;
};

SensitivityReport mc_metric(const Dataset& d, MetricKind metric, std::size_t n_bins,
                            std::size_t n_draws, std::uint64_t master_seed,
                            unsigned threads = 0);

// Global adversarial ordering: ascending |E| inside every tie group.
std::vector<std::size_t> worst_case_permutation(const Dataset& d);

struct DrawFit {
    std::size_t draw = 0;
    bool ok = false;
    InterceptFit fit;     // meaningful only when ok
    std::string error;
};

struct VerdictFractionReport {
    MetricKind metric = MetricKind::ence;
    std::size_t n_draws = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::size_t> grid;
    double sqrt_n_min = kDefaultSqrtNMin;
    std::size_t min_bin_size = kDefaultMinBinSize;
    double pass_fraction = 0.0;      // passing verdicts / n_draws
    std::vector<DrawFit> fits;
};

// Per random ordering: metric-vs-sqrt(N) series over the grid, intercept
// fit, verdict. Only the ordering varies across draws.
VerdictFractionReport mc_verdict_fraction(const Dataset& d, MetricKind metric,
                                          std::span<const std::size_t> grid,
                                          double sqrt_n_min, std::size_t min_bin_size,
                                          std::size_t n_draws, std::uint64_t master_seed,
                                          unsigned threads = 0);

} // namespace uqcal

#endif
