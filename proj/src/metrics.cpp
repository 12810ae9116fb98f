#include "uqcal/metrics.hpp"

#include <cmath>

#include "uqcal/errors.hpp"

namespace uqcal {

MetricKind metric_from_string(const std::string& name) {
    if (name == "ence") return MetricKind::ence;
    if (name == "zve") return MetricKind::zve;
    throw InputError("unknown metric '" + name + "' (expected ence or zve)");
}

std::string to_string(MetricKind kind) {
    return kind == MetricKind::ence ? "ence" : "zve";
}

double metric_target(MetricKind kind) {
    return kind == MetricKind::ence ? 0.0 : 1.0;
}

double ence(std::span<const BinStats> stats) {
    if (stats.empty())
        throw AnalysisError("metric error: ENCE over empty bin statistics");
    double total = 0.0;
    for (const auto& s : stats) {
        if (!(s.rmv > 0.0))
            throw AnalysisError("metric error: bin " + std::to_string(s.index + 1) +
                                " has non-positive RMV");
        total += std::abs(s.rmv - s.rmse) / s.rmv;
    }
    return total / static_cast<double>(stats.size());
}

double zve(std::span<const BinStats> stats) {
    if (stats.empty())
        throw AnalysisError("metric error: ZVE over empty bin statistics");
    double total = 0.0;
    for (const auto& s : stats) {
        if (s.zvar <= 0.0)
            throw AnalysisError("metric error: bin " + std::to_string(s.index + 1) +
                                " has zero z-score variance (log singularity)");
        total += std::abs(std::log(s.zvar));
    }
    return std::exp(total / static_cast<double>(stats.size()));
}

double binned_metric(MetricKind kind, std::span<const BinStats> stats) {
    return kind == MetricKind::ence ? ence(stats) : zve(stats);
}

AverageCalibration average_calibration(const Dataset& d) {
    const std::size_t m = d.size();
    double sum_u2 = 0.0, sum_e2 = 0.0, sum_z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sum_u2 += d.uncertainty(i) * d.uncertainty(i);
        sum_e2 += d.error(i) * d.error(i);
        sum_z += d.z(i);
    }
    const double z_mean = sum_z / static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dz = d.z(i) - z_mean;
        ss += dz * dz;
    }
    AverageCalibration out;
    out.var_z = ss / static_cast<double>(m - 1);
    out.rmv_rmse_ratio = std::sqrt(sum_u2 / static_cast<double>(m)) /
                         std::sqrt(sum_e2 / static_cast<double>(m));
    return out;
}

} // namespace uqcal
