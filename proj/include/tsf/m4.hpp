#pragma once

#include "tsf/core.hpp"
#include "tsf/eval.hpp"
#include "tsf/regress.hpp"
#include "tsf/transforms.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsf::m4 {

// ---------------------------------------------------------------------------
// Data

struct DatasetSpec {
    std::string name;
    int sp = 1;
    int horizon = 1;
};

/// yearly, quarterly, monthly, weekly, daily, hourly.
const std::vector<DatasetSpec>& datasets();
const DatasetSpec& dataset(const std::string& name);

struct Series {
    std::string id;
    TimeSeries train;
    std::vector<double> test;
};

/// "<dir>/Hourly-train.csv" and friends.
std::filesystem::path train_path(const std::filesystem::path& dir, const DatasetSpec& spec);
std::filesystem::path test_path(const std::filesystem::path& dir, const DatasetSpec& spec);

/// Reads M4 CSV files: a header row, then one row per series holding the
/// quoted id and its values. Trailing empty fields are ignored. Series are
/// returned in training-file order.
std::vector<Series> load_m4(const std::filesystem::path& train_file, const std::filesystem::path& test_file,
                            const DatasetSpec& spec);

// ---------------------------------------------------------------------------
// Model registry

enum class WindowRule { Max, Min };
WindowRule parse_window_rule(const std::string& s);

using RegressorFactory = std::function<RegressorPtr()>;

struct RegistryOptions {
    /// Window length of untuned reduction models: max(sp, 3) or min(sp, 3).
    WindowRule window_rule = WindowRule::Max;
    /// Seasonally adjust the input of the residual-boosting models as well.
    bool deseasonalize_residuals = false;
    SeasonalityTestConfig seasonality;
    /// Extra regressors by model prefix, e.g. "RF".
    std::map<std::string, RegressorFactory> regressors;
};

/// Window grid of the tuned reduction models.
const std::vector<std::int64_t>& tuning_windows();

std::vector<std::string> model_names(const RegistryOptions& options = {});
ForecasterPtr build_model(const std::string& name, int sp, int horizon, const RegistryOptions& options = {});

// ---------------------------------------------------------------------------
// Runner

struct RunRecord {
    std::string dataset;
    std::string model;
    std::string series_id;
    double smape = 0.0;
    double mase = 0.0;
    double runtime_s = 0.0;
    /// Empty on success; smape and mase are NaN otherwise.
    std::string error;

    bool ok() const noexcept { return error.empty(); }
};

struct RunConfig {
    std::vector<std::string> models;
    MaseDenominator mase_denominator = MaseDenominator::AsFormula;
    RegistryOptions registry;
    int jobs = 1;
};

/// Fits `model` on one series, forecasts the test horizon and scores it.
/// Never throws on model failure; the error is recorded instead.
RunRecord evaluate_series(const std::string& model, const DatasetSpec& spec, const Series& series,
                          const RunConfig& config);

/// Evaluates every (model, series) pair. Naive2 is added when missing.
/// Records are ordered by model (in config order, Naive2 first when added)
/// and then by series. The parallel variant distributes tasks over
/// `config.jobs` OpenMP threads and returns the same records.
std::vector<RunRecord> run_dataset(const DatasetSpec& spec, const std::vector<Series>& data, const RunConfig& config);
std::vector<RunRecord> run_dataset_serial(const DatasetSpec& spec, const std::vector<Series>& data,
                                          const RunConfig& config);

/// Models as they will be run: Naive2 first if absent from `models`.
std::vector<std::string> effective_models(const std::vector<std::string>& models);

struct Aggregate {
    std::string dataset;
    std::string model;
    std::size_t n_series = 0;
    std::size_t n_failed = 0;
    double smape = 0.0;
    double mase = 0.0;
    /// Over series where both this model and Naive2 succeeded; NaN without Naive2.
    double owa = 0.0;
    /// Mean sMAPE rank among the dataset's models, over series where every model succeeded.
    double mean_rank_smape = 0.0;
    double runtime_s = 0.0;
};

/// One aggregate per (dataset, model), in first-appearance order.
std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records);

// ---------------------------------------------------------------------------
// Persistence

std::string record_json(const RunRecord& r);
std::string aggregate_json(const Aggregate& a);

void write_results(const std::filesystem::path& path, const std::vector<RunRecord>& records,
                   const std::vector<Aggregate>& aggregates);

struct Results {
    std::vector<RunRecord> records;
    std::vector<Aggregate> aggregates;
};

Results read_results(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Published comparison

struct PublishedValue {
    std::string model;
    std::string dataset;
    std::string metric;
    double value = 0.0;
};

std::vector<PublishedValue> read_published(const std::filesystem::path& path);

struct ComparisonRow {
    std::string model;
    std::string dataset;
    std::string metric;
    double replicated = 0.0;
    double published = 0.0;
    /// 100 * (replicated - published) / published.
    double diff_pct = 0.0;
};

double percentage_difference(double replicated, double published);

/// One row per aggregate metric (smape, mase, owa) with a published value.
/// With `strict`, a missing reference throws MissingReference.
std::vector<ComparisonRow> compare(const std::vector<Aggregate>& aggregates,
                                   const std::vector<PublishedValue>& published, bool strict = false);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_text(const std::vector<ComparisonRow>& rows);

// ---------------------------------------------------------------------------
// Significance report

enum class StatTest { Friedman, Nemenyi, WilcoxonHolm, TTest };
StatTest parse_stat_test(const std::string& s);

struct PairwiseRow {
    std::string model_a;
    std::string model_b;
    double statistic = 0.0;
    double p_value = 1.0;
    double p_holm = 1.0;
    bool significant = false;
    std::string error;
};

struct StatsReport {
    StatTest test = StatTest::Friedman;
    Metric metric = Metric::Smape;
    std::size_t n_series = 0;
    /// Sorted ascending by mean rank.
    std::vector<std::pair<std::string, double>> mean_ranks;
    std::optional<TestResult> friedman;
    std::optional<CdDiagram> cd;
    std::vector<PairwiseRow> pairwise;
};

/// Runs `test` on the records. Series are keyed by "dataset/series_id".
/// Throws IncompleteGrid when a model lacks a valid score on some series.
StatsReport stats(const std::vector<RunRecord>& records, StatTest test, Metric metric, double alpha = 0.05);
std::string stats_json(const StatsReport& report);

} // namespace tsf::m4
