#ifndef UQCAL_TABLE_HPP
#define UQCAL_TABLE_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "uqcal/binning.hpp"
#include "uqcal/dataset.hpp"
#include "uqcal/intercept.hpp"

namespace uqcal {

// Plot-ready comma-delimited tables. Numbers use shortest round-trip
// formatting so the files re-parse to identical doubles.

// bin,n,RMV,RMSE,zvar,u_lo,u_hi (bin is 1-based)
void write_reliability_table(std::ostream& out, std::span<const BinStats> stats);

// N,sqrtN,value,min_bin_size,used_in_fit
void write_series_table(std::ostream& out, const MetricSeries& series,
                        const std::vector<bool>& used_in_fit);

// value,count
void write_profile_table(std::ostream& out, const StratificationProfile& profile);

// draw,value (draw is 0-based; failed draws emit an empty value)
void write_samples_table(std::ostream& out, std::span<const double> samples);

} // namespace uqcal

#endif
