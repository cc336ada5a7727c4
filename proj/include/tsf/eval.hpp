#pragma once

#include <span>
#include <string>
#include <vector>

namespace tsf {

// ---------------------------------------------------------------------------
// Accuracy metrics

/// Symmetric MAPE in percent, in [0, 200]. Terms where |y| + |yhat| = 0 count as 0.
double smape(std::span<const double> y_true, std::span<const double> y_pred);

enum class MaseDenominator {
    /// Seasonal naive MAE over the concatenation of train and test.
    AsFormula,
    /// Seasonal naive MAE over the training series only (M4 reference code).
    TrainOnly,
};

MaseDenominator parse_mase_denominator(const std::string& s);
std::string to_string(MaseDenominator d);

double mase(std::span<const double> y_true, std::span<const double> y_pred, std::span<const double> y_train, int m,
            MaseDenominator denominator = MaseDenominator::AsFormula);

struct EvalRecord {
    std::string series_id;
    std::string model;
    double smape = 0.0;
    double mase = 0.0;
    double runtime_s = 0.0;
};

/// 0.5 * (mean sMAPE / mean sMAPE of Naive2 + mean MASE / mean MASE of Naive2).
/// Both collections must cover the same series ids.
double owa(const std::vector<EvalRecord>& records, const std::vector<EvalRecord>& naive2_records);
double owa(double smape_mean, double mase_mean, double naive2_smape_mean, double naive2_mase_mean);

// ---------------------------------------------------------------------------
// Significance tests

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sided paired t-test on a - b with n - 1 degrees of freedom.
TestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Two-sided tail probability of Student's t.
double student_t_two_sided(double t, double df);
/// Upper tail probability of the chi-squared distribution.
double chi_squared_upper(double x, double df);
double normal_cdf(double z);

/// Per-series ranks, ascending (lowest score gets rank 1), ties averaged.
struct RankMatrix {
    std::vector<std::string> models;
    std::vector<std::string> series;
    /// ranks[i][j]: rank of model j on series i.
    std::vector<std::vector<double>> ranks;
};

/// Average ranks of one row of scores.
std::vector<double> rank_row(std::span<const double> scores);

enum class Metric { Smape, Mase };
Metric parse_metric(const std::string& s);

/// Models and series are sorted by name. Every model must have a finite
/// score on every series.
RankMatrix rank_models(const std::vector<EvalRecord>& records, Metric metric);
RankMatrix rank_scores(std::vector<std::string> models, std::vector<std::string> series,
                       const std::vector<std::vector<double>>& scores);
std::vector<double> mean_ranks(const RankMatrix& ranks);

/// chi2_F = 12N / (k(k+1)) * (sum_j R_j^2 - k(k+1)^2 / 4), k - 1 degrees of freedom.
TestResult friedman_test(const RankMatrix& ranks);

/// Critical values q_alpha of the Nemenyi test (studentized range statistic
/// with infinite degrees of freedom divided by sqrt(2)), k = 2..30.
double nemenyi_q(int k, double alpha);
double nemenyi_cd(int k, std::size_t n_series, double alpha = 0.05);

/// Maximal groups of models, contiguous in mean-rank order, whose mean ranks
/// differ by less than cd. Only groups of two or more are returned. Entries
/// are indices into `mean_ranks`.
std::vector<std::vector<std::size_t>> nemenyi_groups(std::span<const double> mean_ranks, double cd);

/// Wilcoxon signed-rank test on a - b. Zero differences are dropped.
/// W = min(W+, W-); the two-sided p is exact for n <= 25 and uses the
/// tie-corrected normal approximation above.
TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p-value of W over the null distribution of signed ranks.
/// `ranks` may hold averaged (half-integer) ranks.
double wilcoxon_exact_p(std::span<const double> ranks, double w);

/// Holm step-down adjusted p-values, in input order.
std::vector<double> holm_adjust(std::span<const double> p_values);

// ---------------------------------------------------------------------------
// Critical-difference diagram data

struct CdDiagram {
    std::vector<std::string> models;
    std::vector<double> mean_ranks;
    double cd = 0.0;
    double alpha = 0.05;
    std::size_t n_series = 0;
    std::vector<std::vector<std::size_t>> groups;
};

CdDiagram cd_diagram(const RankMatrix& ranks, double alpha = 0.05);
/// Pretty-printed JSON object with models, mean ranks, cd and groups.
std::string to_json(const CdDiagram& d);
std::string render_cd_svg(const CdDiagram& d);

} // namespace tsf
