#include "uqcal/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "uqcal/errors.hpp"
#include "uqcal/version.hpp"

namespace uqcal {

Json report_envelope(Json config, Json dataset_summary) {
    Json j;
    j["tool_version"] = kVersion;
    j["config"] = std::move(config);
    j["dataset_summary"] = std::move(dataset_summary);
    j["results"] = Json::object();
    j["warnings"] = Json::array();
    return j;
}

Json dataset_summary_json(const Dataset& d, const std::string& source) {
    const auto [lo, hi] =
        std::minmax_element(d.uncertainties().begin(), d.uncertainties().end());
    Json j;
    j["source"] = source;
    j["M"] = d.size();
    j["u_min"] = *lo;
    j["u_max"] = *hi;
    return j;
}

Json to_json(const AverageCalibration& avg) {
    return Json{{"var_z", avg.var_z}, {"rmv_rmse_ratio", avg.rmv_rmse_ratio}};
}

Json to_json(const InterceptFit& fit, MetricKind metric) {
    Json j;
    j["metric"] = to_string(metric);
    j["intercept"] = fit.intercept;
    j["slope"] = fit.slope;
    j["ci_lo"] = fit.ci_lo;
    j["ci_hi"] = fit.ci_hi;
    j["n_points_used"] = fit.n_points_used;
    j["target"] = fit.target;
    j["verdict"] = fit.verdict;
    return j;
}

Json to_json(const MetricSeries& series, const std::vector<bool>& used_in_fit) {
    Json points = Json::array();
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        const auto& p = series.points[i];
        Json pj;
        pj["N"] = p.n_bins;
        pj["sqrtN"] = p.sqrt_n;
        if (p.usable)
            pj["value"] = p.value;
        else
            pj["error"] = p.note;
        pj["min_bin_size"] = p.min_bin_size;
        pj["used_in_fit"] = static_cast<bool>(used_in_fit[i]);
        points.push_back(std::move(pj));
    }
    Json j;
    j["metric"] = to_string(series.metric);
    j["ordering"] = series.policy;
    j["points"] = std::move(points);
    return j;
}

Json to_json(const SensitivityReport& report) {
    Json j;
    j["metric"] = to_string(report.metric);
    j["N"] = report.n_bins;
    j["n_draws"] = report.n_draws;
    j["master_seed"] = report.master_seed;
    j["mean"] = report.mean;
    j["sd"] = report.sd;
    j["keep_order_value"] = report.keep_order_value;
    j["worst_case_value"] = report.worst_case_value;
    j["n_failed_draws"] = report.draw_errors.size();
    Json samples = Json::array();
    for (double v : report.samples) {
        if (std::isfinite(v))
            samples.push_back(v);
        else
            samples.push_back(nullptr);
    }
    j["samples"] = std::move(samples);
    return j;
}

Json to_json(const VerdictFractionReport& report) {
    Json j;
    j["metric"] = to_string(report.metric);
    j["n_draws"] = report.n_draws;
    j["master_seed"] = report.master_seed;
    j["grid"] = report.grid;
    j["sqrt_n_min"] = report.sqrt_n_min;
    j["min_bin_size"] = report.min_bin_size;
    j["pass_fraction"] = report.pass_fraction;
    Json fits = Json::array();
    for (const auto& f : report.fits) {
        Json fj;
        fj["draw"] = f.draw;
        if (f.ok) {
            fj["intercept"] = f.fit.intercept;
            fj["slope"] = f.fit.slope;
            fj["ci_lo"] = f.fit.ci_lo;
            fj["ci_hi"] = f.fit.ci_hi;
            fj["verdict"] = f.fit.verdict;
        } else {
            fj["error"] = f.error;
        }
        fits.push_back(std::move(fj));
    }
    j["per_draw"] = std::move(fits);
    return j;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot open output file: " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace uqcal
