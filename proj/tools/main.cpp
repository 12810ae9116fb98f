// Command-line front end: calibration diagnostics for regression
// prediction uncertainties.
//
// Exit codes: 0 success (and validation pass), 1 usage error, 2 input
// error, 3 validation verdict fail, 4 analysis error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "uqcal/binning.hpp"
#include "uqcal/dataset.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/format.hpp"
#include "uqcal/intercept.hpp"
#include "uqcal/metrics.hpp"
#include "uqcal/recalibration.hpp"
#include "uqcal/report.hpp"
#include "uqcal/sensitivity.hpp"
#include "uqcal/synthetic.hpp"
#include "uqcal/table.hpp"
#include "uqcal/version.hpp"

namespace fs = std::filesystem;
using uqcal::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerdictFail = 3;
constexpr int kExitAnalysis = 4;

struct DatasetOpts {
    std::string input;
    std::string schema = "direct";
};

struct TieOpts {
    std::string ties = "keep";
    std::uint64_t seed = 0;
    bool seed_given = false;
};

uqcal::TiePolicy resolve_ties(const TieOpts& t) {
    const auto kind = uqcal::tie_kind_from_string(t.ties);
    if (kind == uqcal::TieKind::random && !t.seed_given)
        throw uqcal::InputError("tie policy 'random' requires --seed");
    switch (kind) {
        case uqcal::TieKind::keep: return uqcal::TiePolicy::keep();
        case uqcal::TieKind::random: return uqcal::TiePolicy::random(t.seed);
        case uqcal::TieKind::abs_error_asc: return uqcal::TiePolicy::by_abs_error();
    }
    throw uqcal::InputError("unreachable tie policy");
}

Json ties_config(const TieOpts& t) {
    Json j;
    j["ties"] = t.ties;
    if (t.ties == "random")
        j["seed"] = t.seed;
    return j;
}

uqcal::Dataset load(const DatasetOpts& d) {
    return uqcal::load_dataset_file(d.input, uqcal::schema_from_string(d.schema));
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw uqcal::InputError("cannot create output directory '" + dir.string() +
                                "': " + ec.message());
    return dir;
}

void write_table_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out)
        throw uqcal::InputError("cannot open output file: " + path.string());
    body(out);
}

std::vector<uqcal::MetricKind> select_metrics(const std::string& metric) {
    if (metric == "both")
        return {uqcal::MetricKind::ence, uqcal::MetricKind::zve};
    return {uqcal::metric_from_string(metric)};
}

// ---------------------------------------------------------------- profile

struct ProfileOpts {
    DatasetOpts data;
    double tolerance = 0.0;
    std::string out = ".";
};

int run_profile(const ProfileOpts& opt) {
    const auto dataset = load(opt.data);
    const auto profile = uqcal::stratification_profile(dataset, opt.tolerance);

    const fs::path dir = prepare_out_dir(opt.out);
    write_table_file(dir / "profile_strata.csv",
                     [&](std::ostream& os) { uqcal::write_profile_table(os, profile); });

    Json config{{"command", "profile"},
                {"input", opt.data.input},
                {"schema", opt.data.schema},
                {"tolerance", opt.tolerance},
                {"out", opt.out}};
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, opt.data.input));
    report["results"] = Json{{"M", dataset.size()},
                             {"n_unique", profile.n_unique},
                             {"n_singletons", profile.n_singletons}};
    uqcal::write_json_file(dir / "profile_report.json", report);
    std::cout << "profile: M=" << dataset.size() << " n_unique=" << profile.n_unique
              << " n_singletons=" << profile.n_singletons << '\n';
    return kExitOk;
}

// --------------------------------------------------------------- diagnose

struct DiagnoseOpts {
    DatasetOpts data;
    TieOpts ties;
    std::size_t bins = 15;
    std::string out = ".";
};

int run_diagnose(const DiagnoseOpts& opt) {
    const auto dataset = load(opt.data);
    const auto policy = resolve_ties(opt.ties);
    const auto stats = uqcal::bin_stats(dataset, uqcal::make_partition(dataset, policy, opt.bins));
    const double ence_value = uqcal::ence(stats);
    const double zve_value = uqcal::zve(stats);
    const auto avg = uqcal::average_calibration(dataset);

    const fs::path dir = prepare_out_dir(opt.out);
    write_table_file(dir / "reliability.csv",
                     [&](std::ostream& os) { uqcal::write_reliability_table(os, stats); });

    Json config{{"command", "diagnose"},
                {"input", opt.data.input},
                {"schema", opt.data.schema},
                {"bins", opt.bins},
                {"out", opt.out}};
    config.update(ties_config(opt.ties));
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, opt.data.input));
    report["results"] = Json{{"average_calibration", uqcal::to_json(avg)},
                             {"N", opt.bins},
                             {"ordering", policy.describe()},
                             {"ence", ence_value},
                             {"zve", zve_value}};
    uqcal::write_json_file(dir / "diagnose_report.json", report);
    std::cout << "diagnose: N=" << opt.bins << " ence=" << uqcal::format_double(ence_value)
              << " zve=" << uqcal::format_double(zve_value) << '\n';
    return kExitOk;
}

// --------------------------------------------------------------- validate

struct ValidateOpts {
    DatasetOpts data;
    TieOpts ties;
    std::string metric = "both";
    std::vector<std::size_t> grid;  // empty -> default grid
    double sqrt_n_min = uqcal::kDefaultSqrtNMin;
    std::size_t min_bin_size = uqcal::kDefaultMinBinSize;
    std::string out = ".";
};

int run_validate(const ValidateOpts& opt) {
    const auto dataset = load(opt.data);
    const auto policy = resolve_ties(opt.ties);
    const auto grid = opt.grid.empty()
                          ? uqcal::default_bin_grid(dataset.size(), opt.min_bin_size)
                          : opt.grid;
    const auto permutation = uqcal::order_records(dataset, policy);

    struct PerMetric {
        uqcal::MetricSeries series;
        std::vector<bool> used;
        uqcal::InterceptFit fit;
    };
    std::vector<PerMetric> outputs;
    bool all_pass = true;
    uqcal::FitCalibration calibration;  // shared: both metrics retain the same points
    for (const auto metric : select_metrics(opt.metric)) {
        PerMetric pm{uqcal::metric_series(dataset, permutation, policy.describe(), metric, grid),
                     {},
                     {}};
        pm.used = uqcal::fit_mask(pm.series, opt.sqrt_n_min, opt.min_bin_size);
        auto retained = uqcal::retained_bin_counts(pm.series, opt.sqrt_n_min, opt.min_bin_size);
        if (!calibration.matches(dataset.size(), retained))
            calibration = uqcal::calibrate_fit(dataset.size(), std::move(retained));
        pm.fit = uqcal::fit_intercept(pm.series, opt.sqrt_n_min, opt.min_bin_size, &calibration);
        all_pass = all_pass && pm.fit.verdict;
        outputs.push_back(std::move(pm));
    }

    const fs::path dir = prepare_out_dir(opt.out);
    Json config{{"command", "validate"},
                {"input", opt.data.input},
                {"schema", opt.data.schema},
                {"metric", opt.metric},
                {"grid", grid},
                {"grid_min_sqrtn", opt.sqrt_n_min},
                {"min_bin_size", opt.min_bin_size},
                {"out", opt.out}};
    config.update(ties_config(opt.ties));
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, opt.data.input));
    Json fits = Json::array();
    for (const auto& pm : outputs) {
        const std::string name = "series_" + to_string(pm.series.metric) + ".csv";
        write_table_file(dir / name, [&](std::ostream& os) {
            uqcal::write_series_table(os, pm.series, pm.used);
        });
        Json fj = uqcal::to_json(pm.fit, pm.series.metric);
        fj["series_file"] = name;
        fits.push_back(std::move(fj));
        for (const auto& p : pm.series.points)
            if (!p.usable)
                report["warnings"].push_back("series " + to_string(pm.series.metric) +
                                            ", N=" + std::to_string(p.n_bins) + ": " + p.note);
    }
    report["results"] = Json{{"fits", std::move(fits)}, {"pass", all_pass}};
    uqcal::write_json_file(dir / "validate_report.json", report);
    for (const auto& pm : outputs)
        std::cout << "validate: " << to_string(pm.series.metric)
                  << " intercept=" << uqcal::format_double(pm.fit.intercept) << " ci=["
                  << uqcal::format_double(pm.fit.ci_lo) << ", "
                  << uqcal::format_double(pm.fit.ci_hi) << "] verdict="
                  << (pm.fit.verdict ? "pass" : "fail") << '\n';
    return all_pass ? kExitOk : kExitVerdictFail;
}

// ------------------------------------------------------------ sensitivity

struct SensitivityOpts {
    DatasetOpts data;
    std::uint64_t seed = 0;
    std::size_t draws = 250;
    std::size_t bins = 50;
    std::string metric = "both";
    bool verdicts = false;
    std::vector<std::size_t> grid;
    double sqrt_n_min = uqcal::kDefaultSqrtNMin;
    std::size_t min_bin_size = uqcal::kDefaultMinBinSize;
    bool emit_samples = false;
    unsigned threads = 0;
    std::string out = ".";
};

int run_sensitivity(const SensitivityOpts& opt) {
    const auto dataset = load(opt.data);
    const auto metrics = select_metrics(opt.metric);
    const auto grid = opt.grid.empty()
                          ? uqcal::default_bin_grid(dataset.size(), opt.min_bin_size)
                          : opt.grid;
    const fs::path dir = prepare_out_dir(opt.out);

    Json config{{"command", "sensitivity"},
                {"input", opt.data.input},
                {"schema", opt.data.schema},
                {"metric", opt.metric},
                {"draws", opt.draws},
                {"seed", opt.seed},
                {"verdicts", opt.verdicts}};
    if (opt.verdicts) {
        config["grid"] = grid;
        config["grid_min_sqrtn"] = opt.sqrt_n_min;
        config["min_bin_size"] = opt.min_bin_size;
    } else {
        config["bins"] = opt.bins;
        config["emit_samples"] = opt.emit_samples;
    }
    config["out"] = opt.out;
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, opt.data.input));
    Json results = Json::array();

    if (opt.verdicts) {
        for (const auto metric : metrics) {
            const auto vr = uqcal::mc_verdict_fraction(dataset, metric, grid, opt.sqrt_n_min,
                                                       opt.min_bin_size, opt.draws, opt.seed,
                                                       opt.threads);
            results.push_back(uqcal::to_json(vr));
            std::cout << "sensitivity: " << to_string(metric)
                      << " pass_fraction=" << uqcal::format_double(vr.pass_fraction) << '\n';
        }
    } else {
        for (const auto metric : metrics) {
            const auto sr =
                uqcal::mc_metric(dataset, metric, opt.bins, opt.draws, opt.seed, opt.threads);
            for (const auto& err : sr.draw_errors)
                report["warnings"].push_back(err);
            if (opt.emit_samples) {
                const std::string name = "samples_" + to_string(metric) + ".csv";
                write_table_file(dir / name, [&](std::ostream& os) {
                    uqcal::write_samples_table(os, sr.samples);
                });
            }
            results.push_back(uqcal::to_json(sr));
            std::cout << "sensitivity: " << to_string(metric) << " mean="
                      << uqcal::format_double(sr.mean) << " sd=" << uqcal::format_double(sr.sd)
                      << " keep=" << uqcal::format_double(sr.keep_order_value)
                      << " worst=" << uqcal::format_double(sr.worst_case_value) << '\n';
        }
    }
    report["results"] = Json{{"studies", std::move(results)}};
    uqcal::write_json_file(dir / "sensitivity_report.json", report);
    return kExitOk;
}

// ------------------------------------------------------------ recalibrate

struct RecalFitOpts {
    DatasetOpts data;
    std::string method = "centered";
    std::string model_out;  // default <out>/model.json
    std::string out = ".";
};

int run_recalibrate_fit(const RecalFitOpts& opt) {
    const auto dataset = load(opt.data);
    const auto kind = opt.method == "isotonic" ? uqcal::ModelKind::isotonic_step
                      : opt.method == "centered"
                          ? uqcal::ModelKind::centered_isotonic
                          : throw uqcal::InputError("unknown method '" + opt.method +
                                                    "' (expected isotonic or centered)");
    const auto model = uqcal::fit_recalibration(dataset, kind);

    const fs::path dir = prepare_out_dir(opt.out);
    const fs::path model_path =
        opt.model_out.empty() ? dir / "model.json" : fs::path(opt.model_out);
    uqcal::write_json_file(model_path, model.to_json());

    Json config{{"command", "recalibrate"}, {"submode", "fit"},
                {"input", opt.data.input},  {"schema", opt.data.schema},
                {"method", opt.method},     {"model_out", model_path.string()},
                {"out", opt.out}};
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, opt.data.input));
    report["results"] = Json{{"kind", to_string(model.kind())},
                             {"n_knots", model.knots().size()},
                             {"model_file", model_path.string()}};
    uqcal::write_json_file(dir / "recalibrate_fit_report.json", report);
    std::cout << "recalibrate fit: " << to_string(model.kind()) << " with "
              << model.knots().size() << " knots -> " << model_path.string() << '\n';
    return kExitOk;
}

struct RecalApplyOpts {
    DatasetOpts data;
    std::string model;
    std::string out = ".";
};

int run_recalibrate_apply(const RecalApplyOpts& opt) {
    const auto dataset = load(opt.data);
    std::ifstream in(opt.model);
    if (!in)
        throw uqcal::InputError("cannot open model file: " + opt.model);
    Json mj;
    try {
        mj = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw uqcal::InputError("model file is not valid JSON: " + std::string(e.what()));
    }
    const auto model = uqcal::RecalibrationModel::from_json(mj);
    const auto recalibrated = model.apply(dataset.uncertainties());
    const uqcal::Dataset out_set(dataset.errors(), recalibrated, "recalibrated");

    const auto before = uqcal::stratification_profile(dataset);
    const auto after = uqcal::stratification_profile(out_set);

    const fs::path dir = prepare_out_dir(opt.out);
    const fs::path data_path = dir / "recalibrated.csv";
    uqcal::write_dataset_file(data_path, out_set);

    Json config{{"command", "recalibrate"}, {"submode", "apply"},
                {"input", opt.data.input},  {"schema", opt.data.schema},
                {"model", opt.model},       {"out", opt.out}};
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, opt.data.input));
    report["results"] = Json{{"model_kind", to_string(model.kind())},
                             {"n_knots", model.knots().size()},
                             {"output_file", data_path.string()},
                             {"n_unique_before", before.n_unique},
                             {"n_unique_after", after.n_unique}};
    uqcal::write_json_file(dir / "recalibrate_apply_report.json", report);
    std::cout << "recalibrate apply: n_unique " << before.n_unique << " -> "
              << after.n_unique << ", wrote " << data_path.string() << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ synth

struct SynthOpts {
    std::size_t m = 10000;
    std::string law = "log-uniform";
    double lo = 0.01;
    double hi = 0.1;
    std::vector<double> levels;
    std::vector<double> weights;
    double c = 1.0;
    std::uint64_t seed = 0;
    std::string out = ".";
};

int run_synth(const SynthOpts& opt) {
    uqcal::SyntheticSpec spec;
    spec.m = opt.m;
    spec.miscalibration = opt.c;
    spec.seed = opt.seed;
    if (opt.law == "log-uniform") {
        spec.law = uqcal::LogUniformLaw{opt.lo, opt.hi};
    } else if (opt.law == "fixed-levels") {
        if (opt.levels.empty())
            throw uqcal::InputError("fixed-levels law requires --levels");
        spec.law = uqcal::FixedLevelsLaw{opt.levels, opt.weights};
    } else {
        throw uqcal::InputError("unknown law '" + opt.law +
                                "' (expected log-uniform or fixed-levels)");
    }
    const auto dataset = uqcal::generate_synthetic(spec);

    const fs::path dir = prepare_out_dir(opt.out);
    const fs::path data_path = dir / "synthetic.csv";
    uqcal::write_dataset_file(data_path, dataset);

    Json config{{"command", "synth"}, {"m", opt.m},     {"law", opt.law},
                {"c", opt.c},         {"seed", opt.seed}, {"out", opt.out}};
    if (opt.law == "log-uniform") {
        config["lo"] = opt.lo;
        config["hi"] = opt.hi;
    } else {
        config["levels"] = opt.levels;
        config["weights"] = opt.weights;
    }
    Json report = uqcal::report_envelope(std::move(config),
                                         uqcal::dataset_summary_json(dataset, data_path.string()));
    const auto avg = uqcal::average_calibration(dataset);
    report["results"] = Json{{"output_file", data_path.string()},
                             {"average_calibration", uqcal::to_json(avg)}};
    uqcal::write_json_file(dir / "synth_report.json", report);
    std::cout << "synth: wrote " << data_path.string() << " (M=" << dataset.size() << ")\n";
    return kExitOk;
}

void add_dataset_opts(CLI::App* cmd, DatasetOpts& d) {
    cmd->add_option("--input", d.input, "Input dataset file (delimited text with header)")
        ->required();
    cmd->add_option("--schema", d.schema, "Input columns: direct (E,u) or reference (R,V,uV)")
        ->check(CLI::IsMember({"direct", "reference"}))
        ->capture_default_str();
}

void add_tie_opts(CLI::App* cmd, TieOpts& t) {
    cmd->add_option("--ties", t.ties, "Tie ordering policy: keep, random or abs-error")
        ->check(CLI::IsMember({"keep", "random", "abs-error"}))
        ->capture_default_str();
    auto* seed = cmd->add_option("--seed", t.seed, "Seed for the random tie policy");
    seed->each([&t](const std::string&) { t.seed_given = true; });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calibration diagnostics for regression prediction uncertainties"};
    app.set_version_flag("--version", uqcal::kVersion);
    app.require_subcommand(1);

    ProfileOpts profile_opts;
    auto* profile = app.add_subcommand("profile", "Stratification profile of the uncertainties");
    add_dataset_opts(profile, profile_opts.data);
    profile->add_option("--tolerance", profile_opts.tolerance,
                        "Merge strata whose value gap is <= this (0 = exact ties)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    profile->add_option("--out", profile_opts.out, "Output directory")->capture_default_str();

    DiagnoseOpts diagnose_opts;
    auto* diagnose =
        app.add_subcommand("diagnose", "Binned calibration metrics and reliability table");
    add_dataset_opts(diagnose, diagnose_opts.data);
    add_tie_opts(diagnose, diagnose_opts.ties);
    diagnose->add_option("--bins", diagnose_opts.bins, "Number of equal-count bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    diagnose->add_option("--out", diagnose_opts.out, "Output directory")->capture_default_str();

    ValidateOpts validate_opts;
    auto* validate =
        app.add_subcommand("validate", "Bin-count-independent intercept validation");
    add_dataset_opts(validate, validate_opts.data);
    add_tie_opts(validate, validate_opts.ties);
    validate->add_option("--metric", validate_opts.metric, "Metric: ence, zve or both")
        ->check(CLI::IsMember({"ence", "zve", "both"}))
        ->capture_default_str();
    validate->add_option("--grid", validate_opts.grid,
                         "Explicit bin-count grid (default: auto in sqrt(N))")
        ->delimiter(',');
    validate->add_option("--grid-min-sqrtn", validate_opts.sqrt_n_min,
                         "Keep only series points with sqrt(N) above this in the fit")
        ->capture_default_str();
    validate->add_option("--min-bin-size", validate_opts.min_bin_size,
                         "Keep only series points whose smallest bin has at least this many records")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    validate->add_option("--out", validate_opts.out, "Output directory")->capture_default_str();

    SensitivityOpts sensitivity_opts;
    auto* sensitivity = app.add_subcommand(
        "sensitivity", "Monte-Carlo spread of metrics or verdicts over random tie orderings");
    add_dataset_opts(sensitivity, sensitivity_opts.data);
    sensitivity->add_option("--seed", sensitivity_opts.seed, "Master seed (mandatory)")
        ->required();
    sensitivity->add_option("--draws", sensitivity_opts.draws, "Number of Monte-Carlo draws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sensitivity->add_option("--bins", sensitivity_opts.bins, "Bin count for the metric study")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sensitivity->add_option("--metric", sensitivity_opts.metric, "Metric: ence, zve or both")
        ->check(CLI::IsMember({"ence", "zve", "both"}))
        ->capture_default_str();
    sensitivity->add_flag("--verdicts", sensitivity_opts.verdicts,
                          "Study validation verdicts over the bin-count grid instead");
    sensitivity->add_option("--grid", sensitivity_opts.grid,
                            "Explicit bin-count grid for --verdicts (default: auto)")
        ->delimiter(',');
    sensitivity->add_option("--grid-min-sqrtn", sensitivity_opts.sqrt_n_min,
                            "Fit window lower edge in sqrt(N) for --verdicts")
        ->capture_default_str();
    sensitivity->add_option("--min-bin-size", sensitivity_opts.min_bin_size,
                            "Minimum records per bin for fit points in --verdicts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sensitivity->add_flag("--emit-samples", sensitivity_opts.emit_samples,
                          "Also write per-draw metric values as a table");
    sensitivity->add_option("--threads", sensitivity_opts.threads,
                            "Worker threads (0 = hardware); does not affect results");
    sensitivity->add_option("--out", sensitivity_opts.out, "Output directory")
        ->capture_default_str();

    auto* recalibrate = app.add_subcommand("recalibrate", "Fit or apply a recalibration model");
    recalibrate->require_subcommand(1);
    RecalFitOpts recal_fit_opts;
    auto* recal_fit = recalibrate->add_subcommand("fit", "Fit squared errors vs squared uncertainties");
    add_dataset_opts(recal_fit, recal_fit_opts.data);
    recal_fit->add_option("--method", recal_fit_opts.method, "isotonic (step) or centered")
        ->check(CLI::IsMember({"isotonic", "centered"}))
        ->capture_default_str();
    recal_fit->add_option("--model-out", recal_fit_opts.model_out,
                          "Model file path (default <out>/model.json)");
    recal_fit->add_option("--out", recal_fit_opts.out, "Output directory")->capture_default_str();
    RecalApplyOpts recal_apply_opts;
    auto* recal_apply = recalibrate->add_subcommand("apply", "Apply a fitted model to a dataset");
    add_dataset_opts(recal_apply, recal_apply_opts.data);
    recal_apply->add_option("--model", recal_apply_opts.model, "Model JSON file")->required();
    recal_apply->add_option("--out", recal_apply_opts.out, "Output directory")
        ->capture_default_str();

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with known calibration");
    synth->add_option("--m", synth_opts.m, "Number of records")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--law", synth_opts.law, "Uncertainty law: log-uniform or fixed-levels")
        ->check(CLI::IsMember({"log-uniform", "fixed-levels"}))
        ->capture_default_str();
    synth->add_option("--lo", synth_opts.lo, "Log-uniform lower bound")->capture_default_str();
    synth->add_option("--hi", synth_opts.hi, "Log-uniform upper bound")->capture_default_str();
    synth->add_option("--levels", synth_opts.levels, "Fixed-levels values (comma separated)")
        ->delimiter(',');
    synth->add_option("--weights", synth_opts.weights, "Fixed-levels weights (default equal)")
        ->delimiter(',');
    synth->add_option("--c", synth_opts.c, "Miscalibration factor (1 = calibrated)")
        ->capture_default_str();
    synth->add_option("--seed", synth_opts.seed, "Generator seed")->capture_default_str();
    synth->add_option("--out", synth_opts.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (profile->parsed())
            return run_profile(profile_opts);
        if (diagnose->parsed())
            return run_diagnose(diagnose_opts);
        if (validate->parsed())
            return run_validate(validate_opts);
        if (sensitivity->parsed())
            return run_sensitivity(sensitivity_opts);
        if (recalibrate->parsed()) {
            if (recal_fit->parsed())
                return run_recalibrate_fit(recal_fit_opts);
            return run_recalibrate_apply(recal_apply_opts);
        }
        if (synth->parsed())
            return run_synth(synth_opts);
        std::cerr << "error: no command selected\n";
        return kExitUsage;
    } catch (const uqcal::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const uqcal::Error& e) {
        std::cerr << "analysis error: " << e.what() << '\n';
        return kExitAnalysis;
    }
}
