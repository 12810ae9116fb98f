#ifndef UQCAL_METRICS_HPP
#define UQCAL_METRICS_HPP

#include <span>
#include <string>

#include "uqcal/binning.hpp"
#include "uqcal/dataset.hpp"

namespace uqcal {

enum class MetricKind { ence, zve };

MetricKind metric_from_string(const std::string& name);
std::string to_string(MetricKind kind);

// Perfect-calibration target: 0 for ENCE, 1 for ZVE.
double metric_target(MetricKind kind);

// Mean over bins of |RMV - RMSE| / RMV. 0 iff RMV = RMSE everywhere.
double ence(std::span<const BinStats> stats);

// exp of the mean over bins of |ln zvar|. 1 iff every zvar = 1; invariant
// under zvar -> 1/zvar in any bin.
double zve(std::span<const BinStats> stats);

double binned_metric(MetricKind kind, std::span<const BinStats> stats);

// Whole-dataset average calibration; both fields target 1.
struct AverageCalibration {
    double var_z = 0.0;           // sample variance of E/u
    double rmv_rmse_ratio = 0.0;  // sqrt(mean u^2) / sqrt(mean E^2)
};

AverageCalibration average_calibration(const Dataset& d);

} // namespace uqcal

#endif
