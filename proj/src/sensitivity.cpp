#include "uqcal/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "uqcal/errors.hpp"
#include "uqcal/rng.hpp"

namespace uqcal {

namespace {

// Runs body(k) for k in [0, n) over a fixed static partition of draw
// indices. Slot-indexed output keeps results schedule-independent.
void parallel_for_draws(std::size_t n, unsigned threads,
                        const std::function<void(std::size_t)>& body) {
    unsigned t = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (t < 1)
        t = 1;
    t = static_cast<unsigned>(std::min<std::size_t>(t, n));
    if (t <= 1) {
        for (std::size_t k = 0; k < n; ++k)
            body(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&body, n, t, w] {
            for (std::size_t k = w; k < n; k += t)
                body(k);
        });
    }
    for (auto& th : pool)
        th.join();
}

void check_failures(std::size_t failures, std::size_t n_draws, const char* what,
                    const std::vector<std::string>& errors) {
    if (static_cast<double>(failures) > 0.01 * static_cast<double>(n_draws)) {
        std::string msg = std::string(what) + ": " + std::to_string(failures) + " of " +
                          std::to_string(n_draws) + " draws failed (limit 1%)";
        if (!errors.empty())
            msg += "; first: " + errors.front();
        throw AnalysisError(msg);
    }
}

} // namespace

SensitivityReport mc_metric(const Dataset& d, MetricKind metric, std::size_t n_bins,
                            std::size_t n_draws, std::uint64_t master_seed,
                            unsigned threads) {
    if (n_draws < 2)
        throw InputError("sensitivity: need at least 2 draws");

    SensitivityReport report;
    report.metric = metric;
    report.n_bins = n_bins;
    report.n_draws = n_draws;
    report.master_seed = master_seed;
    report.samples.assign(n_draws, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::string> errors(n_draws);

    parallel_for_draws(n_draws, threads, [&](std::size_t k) {
        try {
            const TiePolicy policy = TiePolicy::random(rng::substream_seed(master_seed, k));
            const auto stats = bin_stats(d, make_partition(d, policy, n_bins));
            report.samples[k] = binned_metric(metric, stats);
        } catch (const Error& err) {
            errors[k] = "draw " + std::to_string(k) + ": " + err.what();
        }
    });

    // Aggregate relative to the first successful draw: when every ordering
    // gives the same value (tie-free data) the mean is then exactly that
    // value and the sd exactly zero, as the order-invariance contract asks.
    std::size_t ok = 0;
    bool have_shift = false;
    double shift = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < n_draws; ++k) {
        if (!errors[k].empty()) {
            report.draw_errors.push_back(errors[k]);
            continue;
        }
        if (!have_shift) {
            shift = report.samples[k];
            have_shift = true;
        }
        ++ok;
        sum += report.samples[k] - shift;
    }
    check_failures(n_draws - ok, n_draws, "sensitivity", report.draw_errors);

    const double shifted_mean = sum / static_cast<double>(ok);
    report.mean = shift + shifted_mean;
    double ss = 0.0;
    for (std::size_t k = 0; k < n_draws; ++k) {
        if (errors[k].empty()) {
            const double dv = (report.samples[k] - shift) - shifted_mean;
            ss += dv * dv;
        }
    }
    report.sd = ok > 1 ? std::sqrt(ss / static_cast<double>(ok - 1)) : 0.0;

    report.keep_order_value =
        binned_metric(metric, bin_stats(d, make_partition(d, TiePolicy::keep(), n_bins)));
    report.worst_case_value = binned_metric(
        metric, bin_stats(d, make_partition(d, TiePolicy::by_abs_error(), n_bins)));
    return report;
}

std::vector<std::size_t> worst_case_permutation(const Dataset& d) {
    return order_records(d, TiePolicy::by_abs_error());
}

VerdictFractionReport mc_verdict_fraction(const Dataset& d, MetricKind metric,
                                          std::span<const std::size_t> grid,
                                          double sqrt_n_min, std::size_t min_bin_size,
                                          std::size_t n_draws, std::uint64_t master_seed,
                                          unsigned threads) {
    if (n_draws < 2)
        throw InputError("sensitivity: need at least 2 draws");
    if (grid.empty())
        throw InputError("sensitivity: empty bin-count grid");

    VerdictFractionReport report;
    report.metric = metric;
    report.n_draws = n_draws;
    report.master_seed = master_seed;
    report.grid.assign(grid.begin(), grid.end());
    report.sqrt_n_min = sqrt_n_min;
    report.min_bin_size = min_bin_size;
    report.fits.resize(n_draws);

    // Every draw reuses one calibration: the retained bin counts are fixed
    // by the grid and filters unless a draw's metric evaluation fails.
    std::vector<std::size_t> expected;
    for (std::size_t n : report.grid)
        if (std::sqrt(static_cast<double>(n)) > sqrt_n_min && d.size() / n >= min_bin_size)
            expected.push_back(n);
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    const FitCalibration calibration = calibrate_fit(d.size(), std::move(expected));

    parallel_for_draws(n_draws, threads, [&](std::size_t k) {
        DrawFit& slot = report.fits[k];
        slot.draw = k;
        try {
            const TiePolicy policy = TiePolicy::random(rng::substream_seed(master_seed, k));
            const auto series = metric_series(d, policy, metric, grid);
            slot.fit = fit_intercept(series, sqrt_n_min, min_bin_size, &calibration);
            slot.ok = true;
        } catch (const Error& err) {
            slot.error = err.what();
        }
    });

    std::size_t failures = 0, passes = 0;
    std::vector<std::string> errors;
    for (const auto& f : report.fits) {
        if (!f.ok) {
            ++failures;
            errors.push_back("draw " + std::to_string(f.draw) + ": " + f.error);
        } else if (f.fit.verdict) {
            ++passes;
        }
    }
    check_failures(failures, n_draws, "verdict fractions", errors);
    report.pass_fraction = static_cast<double>(passes) / static_cast<double>(n_draws);
    return report;
}

} // namespace uqcal
