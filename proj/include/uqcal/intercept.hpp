#ifndef UQCAL_INTERCEPT_HPP
#define UQCAL_INTERCEPT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uqcal/binning.hpp"
#include "uqcal/dataset.hpp"
#include "uqcal/metrics.hpp"

namespace uqcal {

struct SeriesPoint {
    std::size_t n_bins = 0;
    double sqrt_n = 0.0;
    double value = 0.0;            // metric value; meaningful only when usable
    std::size_t min_bin_size = 0;  // smallest bin at this bin count
    bool usable = true;
    std::string note;              // failure message when not usable
};

struct MetricSeries {
    MetricKind metric = MetricKind::ence;
    std::string policy;            // descriptor of the ordering used
    std::size_t m = 0;             // records in the underlying dataset
    std::vector<SeriesPoint> points;
};

// Defaults from the validation procedure: regress only over points with
// sqrt(N) above this, and only where every bin still holds enough records.
inline constexpr double kDefaultSqrtNMin = 6.0;
inline constexpr std::size_t kDefaultMinBinSize = 30;

// Bin-count grid with sqrt(N) uniformly spaced between 2 and
// sqrt(m / min_bin_size), rounded to distinct integers and clamped so the
// smallest bin keeps min_bin_size records.
std::vector<std::size_t> default_bin_grid(std::size_t m,
                                          std::size_t min_bin_size = kDefaultMinBinSize,
                                          std::size_t n_points = 20);

// Metric value at every bin count of the grid, all through one ordering
// pass (the permutation is computed once and reused). A bin count whose
// metric evaluation fails is annotated, not fatal.
MetricSeries metric_series(const Dataset& d, const TiePolicy& policy, MetricKind metric,
                           std::span<const std::size_t> grid);
MetricSeries metric_series(const Dataset& d, const std::vector<std::size_t>& permutation,
                           std::string policy_descriptor, MetricKind metric,
                           std::span<const std::size_t> grid);

struct InterceptFit {
    double intercept = 0.0;
    double slope = 0.0;
    double ci_lo = 0.0;   // 95% two-sided bounds on the intercept
    double ci_hi = 0.0;
    std::size_t n_points_used = 0;
    double target = 0.0;  // 0 for ENCE, 1 for ZVE
    bool verdict = false; // target inside [ci_lo, ci_hi]
};

// Which series points enter the regression under the given filters.
std::vector<bool> fit_mask(const MetricSeries& s, double sqrt_n_min = kDefaultSqrtNMin,
                           std::size_t min_bin_size = kDefaultMinBinSize);

// Bin counts that survive the filters, in increasing order.
std::vector<std::size_t> retained_bin_counts(const MetricSeries& s,
                                             double sqrt_n_min = kDefaultSqrtNMin,
                                             std::size_t min_bin_size = kDefaultMinBinSize);

// Series points at different bin counts are computed from the same records,
// so their fluctuations share a large common component that is collinear
// with the regressors and invisible to residual-based standard errors. The
// textbook interval on the intercept is therefore too narrow by a factor
// that depends only on (m, retained bin counts): under ideal calibration
// the z scores are iid standard normal whatever the uncertainty law, so the
// factor can be measured once by simulation and reused.
struct FitCalibration {
    std::size_t m = 0;
    std::vector<std::size_t> retained;  // bin counts the factors were built for
    double ence_width = 1.0;            // sd of the null intercept / mean OLS se
    double zve_width = 1.0;
    int n_sims = 0;

    double width(MetricKind metric) const;
    bool matches(std::size_t m_other, std::span<const std::size_t> retained_other) const;
};

inline constexpr int kDefaultCalibrationSims = 500;

FitCalibration calibrate_fit(std::size_t m, std::vector<std::size_t> retained,
                             int n_sims = kDefaultCalibrationSims);

// Ordinary least squares of value against sqrt(N) over the retained points.
// The 95% interval on the intercept is t-based with (k-2) degrees of
// freedom, widened by the calibration factor; a matching precomputed
// calibration is reused, otherwise one is built on the fly.
InterceptFit fit_intercept(const MetricSeries& s, double sqrt_n_min = kDefaultSqrtNMin,
                           std::size_t min_bin_size = kDefaultMinBinSize,
                           const FitCalibration* calibration = nullptr);

// True iff the metric target lies inside the confidence interval.
bool validate(const InterceptFit& fit);

} // namespace uqcal

#endif
