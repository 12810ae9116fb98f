#include "uqcal/intercept.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "uqcal/errors.hpp"
#include "uqcal/rng.hpp"

namespace uqcal {
namespace {

// Seed of the internal null simulation; fixed so every fit with the same
// (m, retained bin counts) sees the same calibration factors.
constexpr std::uint64_t kCalibrationSeed = 0x9d2c5680u;

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double se_intercept = 0.0;
};

LineFit ols_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t k = x.size();
    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        x_mean += x[i];
        y_mean += y[i];
    }
    x_mean /= static_cast<double>(k);
    y_mean /= static_cast<double>(k);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - x_mean) * (x[i] - x_mean);
        sxy += (x[i] - x_mean) * (y[i] - y_mean);
    }
    if (!(sxx > 0.0))
        throw AnalysisError("fit error: no variance in sqrt(N) across retained points");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;

    double sse = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    const auto dof = static_cast<double>(k - 2);
    const double sigma = std::sqrt(std::max(sse, 0.0) / dof);
    fit.se_intercept =
        sigma * std::sqrt(1.0 / static_cast<double>(k) + x_mean * x_mean / sxx);
    return fit;
}

} // namespace

std::vector<std::size_t> default_bin_grid(std::size_t m, std::size_t min_bin_size,
                                          std::size_t n_points) {
    if (m < 4 || min_bin_size < 2 || n_points < 2)
        throw InputError("bin grid: need m >= 4, min_bin_size >= 2, n_points >= 2");
    const double s_lo = 2.0;
    const double s_hi = std::max(s_lo, std::sqrt(static_cast<double>(m) /
                                                 static_cast<double>(min_bin_size)));
    const std::size_t n_cap = m / min_bin_size;  // keeps every bin at min_bin_size
    std::vector<std::size_t> grid;
    for (std::size_t j = 0; j < n_points; ++j) {
        const double s = s_lo + (s_hi - s_lo) * static_cast<double>(j) /
                                    static_cast<double>(n_points - 1);
        auto n = static_cast<std::size_t>(std::llround(s * s));
        n = std::clamp<std::size_t>(n, 2, std::max<std::size_t>(2, m / 2));
        if (n_cap >= 2)
            n = std::min(n, n_cap);
        if (grid.empty() || n > grid.back())
            grid.push_back(n);
    }
    return grid;
}

MetricSeries metric_series(const Dataset& d, const TiePolicy& policy, MetricKind metric,
                           std::span<const std::size_t> grid) {
    return metric_series(d, order_records(d, policy), policy.describe(), metric, grid);
}

MetricSeries metric_series(const Dataset& d, const std::vector<std::size_t>& permutation,
                           std::string policy_descriptor, MetricKind metric,
                           std::span<const std::size_t> grid) {
    const std::size_t m = d.size();
    for (std::size_t n : grid)
        if (n < 2 || n > m / 2)
            throw InputError("metric series: bin count " + std::to_string(n) +
                             " outside [2, M/2] for M = " + std::to_string(m));
    std::vector<std::size_t> sorted_grid(grid.begin(), grid.end());
    std::sort(sorted_grid.begin(), sorted_grid.end());
    sorted_grid.erase(std::unique(sorted_grid.begin(), sorted_grid.end()), sorted_grid.end());

    MetricSeries series;
    series.metric = metric;
    series.policy = std::move(policy_descriptor);
    series.m = m;
    series.points.reserve(sorted_grid.size());
    for (std::size_t n : sorted_grid) {
        SeriesPoint p;
        p.n_bins = n;
        p.sqrt_n = std::sqrt(static_cast<double>(n));
        p.min_bin_size = m / n;
        try {
            BinPartition part{permutation, equal_count_bins(m, n)};
            p.value = binned_metric(metric, bin_stats(d, part));
        } catch (const AnalysisError& err) {
            p.usable = false;
            p.note = err.what();
        }
        series.points.push_back(std::move(p));
    }
    return series;
}

std::vector<bool> fit_mask(const MetricSeries& s, double sqrt_n_min,
                           std::size_t min_bin_size) {
    std::vector<bool> mask(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const auto& p = s.points[i];
        mask[i] = p.usable && p.sqrt_n > sqrt_n_min && p.min_bin_size >= min_bin_size;
    }
    return mask;
}

std::vector<std::size_t> retained_bin_counts(const MetricSeries& s, double sqrt_n_min,
                                             std::size_t min_bin_size) {
    const auto mask = fit_mask(s, sqrt_n_min, min_bin_size);
    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < s.points.size(); ++i)
        if (mask[i])
            retained.push_back(s.points[i].n_bins);
    return retained;
}

double FitCalibration::width(MetricKind metric) const {
    return metric == MetricKind::ence ? ence_width : zve_width;
}

bool FitCalibration::matches(std::size_t m_other,
                             std::span<const std::size_t> retained_other) const {
    return m == m_other && std::ranges::equal(retained, retained_other);
}

FitCalibration calibrate_fit(std::size_t m, std::vector<std::size_t> retained, int n_sims) {
    FitCalibration cal;
    cal.m = m;
    cal.retained = std::move(retained);
    if (m < 4 || cal.retained.size() < 3 || n_sims < 2)
        return cal;  // nothing to calibrate against; plain width
    for (std::size_t n : cal.retained)
        if (n < 2 || n > m / 2)
            return cal;

    std::vector<std::vector<std::size_t>> edges;  // boundary offsets per bin count
    std::vector<double> x;
    for (std::size_t n : cal.retained) {
        edges.push_back(equal_count_bins(m, n));
        x.push_back(std::sqrt(static_cast<double>(n)));
    }

    rng::SplitMix64 gen(kCalibrationSeed);
    std::vector<double> pre_z(m + 1), pre_z2(m + 1);
    std::vector<double> y_ence(x.size()), y_zve(x.size());
    std::vector<double> a_ence, a_zve, se_ence, se_zve;
    a_ence.reserve(static_cast<std::size_t>(n_sims));
    for (int sim = 0; sim < n_sims; ++sim) {
        pre_z[0] = pre_z2[0] = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double z = gen.next_normal();
            pre_z[j + 1] = pre_z[j] + z;
            pre_z2[j + 1] = pre_z2[j] + z * z;
        }
        for (std::size_t gi = 0; gi < edges.size(); ++gi) {
            const auto& bounds = edges[gi];
            double sum_e = 0.0, sum_v = 0.0;
            for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
                const double nb = static_cast<double>(bounds[b + 1] - bounds[b]);
                const double sz = pre_z[bounds[b + 1]] - pre_z[bounds[b]];
                const double sz2 = pre_z2[bounds[b + 1]] - pre_z2[bounds[b]];
                sum_e += std::abs(std::sqrt(sz2 / nb) - 1.0);
                const double v = (sz2 - sz * sz / nb) / (nb - 1.0);
                sum_v += std::abs(std::log(v));
            }
            const double n_bins = static_cast<double>(bounds.size() - 1);
            y_ence[gi] = sum_e / n_bins;
            y_zve[gi] = std::exp(sum_v / n_bins);
        }
        const auto fe = ols_line(x, y_ence);
        const auto fz = ols_line(x, y_zve);
        a_ence.push_back(fe.intercept);
        se_ence.push_back(fe.se_intercept);
        a_zve.push_back(fz.intercept);
        se_zve.push_back(fz.se_intercept);
    }

    const auto ratio = [&](const std::vector<double>& a, const std::vector<double>& se) {
        double a_mean = 0.0, se_mean = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            a_mean += a[i];
            se_mean += se[i];
        }
        a_mean /= static_cast<double>(a.size());
        se_mean /= static_cast<double>(se.size());
        double ss = 0.0;
        for (double v : a)
            ss += (v - a_mean) * (v - a_mean);
        const double sd = std::sqrt(ss / static_cast<double>(a.size() - 1));
        if (!(se_mean > 0.0) || !std::isfinite(sd))
            return 1.0;
        return std::max(1.0, sd / se_mean);  // never narrower than textbook
    };
    cal.ence_width = ratio(a_ence, se_ence);
    cal.zve_width = ratio(a_zve, se_zve);
    cal.n_sims = n_sims;
    return cal;
}

InterceptFit fit_intercept(const MetricSeries& s, double sqrt_n_min,
                           std::size_t min_bin_size, const FitCalibration* calibration) {
    const auto mask = fit_mask(s, sqrt_n_min, min_bin_size);
    std::vector<double> x, y;
    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (!mask[i])
            continue;
        x.push_back(s.points[i].sqrt_n);
        y.push_back(s.points[i].value);
        retained.push_back(s.points[i].n_bins);
    }
    const std::size_t k = x.size();
    if (k < 3)
        throw AnalysisError("fit error: only " + std::to_string(k) +
                            " usable series points after filtering; need at least 3");

    const LineFit line = ols_line(x, y);

    FitCalibration local;
    if (calibration == nullptr || !calibration->matches(s.m, retained)) {
        local = calibrate_fit(s.m, std::move(retained));
        calibration = &local;
    }

    InterceptFit fit;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.n_points_used = k;

    const boost::math::students_t_distribution<double> t_dist(static_cast<double>(k - 2));
    const double t_crit = boost::math::quantile(t_dist, 0.975);
    const double half = t_crit * calibration->width(s.metric) * line.se_intercept;
    fit.ci_lo = fit.intercept - half;
    fit.ci_hi = fit.intercept + half;

    fit.target = metric_target(s.metric);
    fit.verdict = fit.ci_lo <= fit.target && fit.target <= fit.ci_hi;
    return fit;
}

bool validate(const InterceptFit& fit) {
    return fit.ci_lo <= fit.target && fit.target <= fit.ci_hi;
}

} // namespace uqcal
