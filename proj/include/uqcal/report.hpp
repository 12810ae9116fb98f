#ifndef UQCAL_REPORT_HPP
#define UQCAL_REPORT_HPP

#include <filesystem>
#include <string>

#include "json.hpp"

#include "uqcal/dataset.hpp"
#include "uqcal/intercept.hpp"
#include "uqcal/sensitivity.hpp"

namespace uqcal {

using Json = nlohmann::ordered_json;

// Machine-readable report envelope. The config block must contain every
// field needed to reproduce the run; execution details (thread counts,
// timing) stay out so identical configs give identical bytes.
Json report_envelope(Json config, Json dataset_summary);

Json dataset_summary_json(const Dataset& d, const std::string& source);

Json to_json(const AverageCalibration& avg);
Json to_json(const InterceptFit& fit, MetricKind metric);
Json to_json(const MetricSeries& series, const std::vector<bool>& used_in_fit);
Json to_json(const SensitivityReport& report);
Json to_json(const VerdictFractionReport& report);

// Serializes with a fixed layout (2-space indent, trailing newline).
void write_json_file(const std::filesystem::path& path, const Json& j);

} // namespace uqcal

#endif
