#include "uqcal/table.hpp"

#include <cmath>
#include <ostream>

#include "uqcal/format.hpp"

namespace uqcal {

void write_reliability_table(std::ostream& out, std::span<const BinStats> stats) {
    out << "bin,n,RMV,RMSE,zvar,u_lo,u_hi\n";
    for (const auto& s : stats) {
        out << s.index + 1 << ',' << s.n << ',' << format_double(s.rmv) << ','
            << format_double(s.rmse) << ',' << format_double(s.zvar) << ','
            << format_double(s.u_lo) << ',' << format_double(s.u_hi) << '\n';
    }
}

void write_series_table(std::ostream& out, const MetricSeries& series,
                        const std::vector<bool>& used_in_fit) {
    out << "N,sqrtN,value,min_bin_size,used_in_fit\n";
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        const auto& p = series.points[i];
        out << p.n_bins << ',' << format_double(p.sqrt_n) << ',';
        if (p.usable)
            out << format_double(p.value);
        out << ',' << p.min_bin_size << ',' << (used_in_fit[i] ? 1 : 0) << '\n';
    }
}

void write_profile_table(std::ostream& out, const StratificationProfile& profile) {
    out << "value,count\n";
    for (const auto& s : profile.strata)
        out << format_double(s.value) << ',' << s.count << '\n';
}

void write_samples_table(std::ostream& out, std::span<const double> samples) {
    out << "draw,value\n";
    for (std::size_t k = 0; k < samples.size(); ++k) {
        out << k << ',';
        if (std::isfinite(samples[k]))
            out << format_double(samples[k]);
        out << '\n';
    }
}

} // namespace uqcal
