#include "tsf/eval.hpp"
#include "tsf/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace tsf {

double student_t_two_sided(double t, double df) {
    const boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double chi_squared_upper(double x, double df) {
    if (x <= 0.0) return 1.0;
    const boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_cdf(double z) { return boost::math::cdf(boost::math::normal(), z); }

TestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "paired_t_test: lengths differ");
    if (a.size() < 2) series_too_short("paired_t_test", 2, a.size());
    const auto n = static_cast<double>(a.size());
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : d) ss += (v - mean) * (v - mean);
    if (ss == 0.0) throw Error(Errc::ZeroVariance, "paired_t_test: differences have zero variance");
    const double sd = std::sqrt(ss / (n - 1.0));
    const double t = mean / (sd / std::sqrt(n));
    return {t, student_t_two_sided(t, n - 1.0)};
}

// ---------------------------------------------------------------------------
// Ranks

std::vector<double> rank_row(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    std::vector<double> ranks(scores.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t q = i; q <= j; ++q) ranks[order[q]] = avg;
        i = j + 1;
    }
    return ranks;
}

Metric parse_metric(const std::string& s) {
    if (s == "smape") return Metric::Smape;
    if (s == "mase") return Metric::Mase;
    throw Error(Errc::InvalidArgument, "unknown metric '" + s + "'");
}

RankMatrix rank_scores(std::vector<std::string> models, std::vector<std::string> series,
                       const std::vector<std::vector<double>>& scores) {
    if (scores.size() != series.size()) throw Error(Errc::DimensionMismatch, "rank_scores: one score row per series expected");
    RankMatrix out{std::move(models), std::move(series), {}};
    out.ranks.reserve(scores.size());
    for (const auto& row : scores) {
        if (row.size() != out.models.size()) throw Error(Errc::DimensionMismatch, "rank_scores: one score per model expected");
        out.ranks.push_back(rank_row(row));
    }
    return out;
}

RankMatrix rank_models(const std::vector<EvalRecord>& records, Metric metric) {
    std::set<std::string> model_set, series_set;
    std::map<std::pair<std::string, std::string>, double> score;
    for (const auto& r : records) {
        model_set.insert(r.model);
        series_set.insert(r.series_id);
        const double v = metric == Metric::Smape ? r.smape : r.mase;
        if (!std::isfinite(v)) throw Error(Errc::IncompleteGrid, fmt::format("{} has no valid score on {}", r.model, r.series_id));
        score[{r.series_id, r.model}] = v;
    }
    std::vector<std::string> models(model_set.begin(), model_set.end());
    std::vector<std::string> series(series_set.begin(), series_set.end());
    std::vector<std::vector<double>> rows;
    rows.reserve(series.size());
    for (const auto& s : series) {
        std::vector<double> row;
        row.reserve(models.size());
        for (const auto& m : models) {
            const auto it = score.find({s, m});
            if (it == score.end()) throw Error(Errc::IncompleteGrid, fmt::format("{} has no score on {}", m, s));
            row.push_back(it->second);
        }
        rows.push_back(std::move(row));
    }
    return rank_scores(std::move(models), std::move(series), rows);
}

std::vector<double> mean_ranks(const RankMatrix& ranks) {
    std::vector<double> out(ranks.models.size(), 0.0);
    if (ranks.ranks.empty()) return out;
    for (const auto& row : ranks.ranks) {
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += row[j];
    }
    for (double& v : out) v /= static_cast<double>(ranks.ranks.size());
    return out;
}

TestResult friedman_test(const RankMatrix& ranks) {
    const auto N = static_cast<double>(ranks.ranks.size());
    const auto k = static_cast<double>(ranks.models.size());
    if (ranks.ranks.size() < 2 || ranks.models.size() < 2) {
        throw Error(Errc::DegenerateInput, "friedman_test needs at least 2 series and 2 models");
    }
    const auto r = mean_ranks(ranks);
    double sum_sq = 0.0;
    for (const double v : r) sum_sq += v * v;
    double chi2 = 12.0 * N / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);
    // Guard against tiny negative values from rounding when all ranks tie.
    if (chi2 < 0.0) chi2 = 0.0;
    return {chi2, chi_squared_upper(chi2, k - 1.0)};
}

// ---------------------------------------------------------------------------
// Nemenyi

namespace {

// Upper quantiles of the studentized range with infinite degrees of freedom,
// divided by sqrt(2), for k = 2..30. Computed from
// P(range < q) = k * int phi(z) (Phi(z + q) - Phi(z))^(k-1) dz; the first
// entries agree with the table in Demsar (2006).
constexpr std::array<double, 29> kQ05{
    1.959964, 2.343701, 2.569032, 2.727774, 2.849705, 2.948320, 3.030878, 3.101730, 3.163684, 3.218654,
    3.268004, 3.312739, 3.353618, 3.391230, 3.426041, 3.458425, 3.488685, 3.517073, 3.543799, 3.569040,
    3.592946, 3.615646, 3.637252, 3.657861, 3.677556, 3.696413, 3.714498, 3.731869, 3.748578};
constexpr std::array<double, 29> kQ10{
    1.644854, 2.052293, 2.291341, 2.459516, 2.588521, 2.692732, 2.779884, 2.854606, 2.919889, 2.977768,
    3.029694, 3.076733, 3.119693, 3.159199, 3.195743, 3.229723, 3.261461, 3.291224, 3.319233, 3.345676,
    3.370712, 3.394477, 3.417089, 3.438651, 3.459253, 3.478971, 3.497878, 3.516033, 3.533492};

} // namespace

double nemenyi_q(int k, double alpha) {
    if (k < 2 || k > 30) throw Error(Errc::InvalidArgument, fmt::format("nemenyi_q: k = {} outside 2..30", k));
    const auto i = static_cast<std::size_t>(k - 2);
    if (std::abs(alpha - 0.05) < 1e-12) return kQ05[i];
    if (std::abs(alpha - 0.10) < 1e-12) return kQ10[i];
    throw Error(Errc::UnsupportedAlpha, fmt::format("nemenyi_q: alpha {} not tabulated (use 0.05 or 0.10)", alpha));
}

double nemenyi_cd(int k, std::size_t n_series, double alpha) {
    if (n_series < 1) throw Error(Errc::DegenerateInput, "nemenyi_cd needs at least one series");
    const double kd = k;
    return nemenyi_q(k, alpha) * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(n_series)));
}

std::vector<std::vector<std::size_t>> nemenyi_groups(std::span<const double> mean_ranks, double cd) {
    std::vector<std::size_t> order(mean_ranks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mean_ranks[a] < mean_ranks[b]; });

    std::vector<std::vector<std::size_t>> groups;
    std::size_t last_end = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < order.size() && mean_ranks[order[j + 1]] - mean_ranks[order[i]] < cd) ++j;
        // A clique ending where the previous one ended is contained in it.
        if (j > i && (groups.empty() || j > last_end)) {
            groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                                order.begin() + static_cast<std::ptrdiff_t>(j + 1));
            last_end = j;
        }
    }
    return groups;
}

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank and Holm

double wilcoxon_exact_p(std::span<const double> ranks, double w) {
    // Doubled ranks are integers even with averaged ties.
    std::vector<std::size_t> doubled(ranks.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
        total += doubled[i];
    }
    std::vector<double> count(total + 1, 0.0);
    count[0] = 1.0;
    for (const auto r : doubled) {
        for (std::size_t s = total; s >= r; --s) {
            count[s] += count[s - r];
            if (s == r) break;
        }
    }
    const auto limit = static_cast<std::size_t>(std::llround(2.0 * w));
    double tail = 0.0;
    for (std::size_t s = 0; s <= std::min(limit, total); ++s) tail += count[s];
    const double p = 2.0 * tail / std::ldexp(1.0, static_cast<int>(ranks.size()));
    return std::min(1.0, p);
}

TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "wilcoxon_signed_rank: lengths differ");
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    }
    if (d.empty()) throw Error(Errc::AllZeroDifferences, "wilcoxon_signed_rank: all differences are zero");

    std::vector<double> abs_d(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) abs_d[i] = std::abs(d[i]);
    const auto ranks = rank_row(abs_d);
    double w_plus = 0.0, w_minus = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) (d[i] > 0.0 ? w_plus : w_minus) += ranks[i];
    const double w = std::min(w_plus, w_minus);

    const auto n = static_cast<double>(d.size());
    if (d.size() <= 25) return {w, wilcoxon_exact_p(ranks, w)};

    double tie_term = 0.0;
    std::map<double, std::size_t> tie_counts;
    for (const double r : ranks) ++tie_counts[r];
    for (const auto& [r, t] : tie_counts) {
        const auto td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double z = (w - mean) / std::sqrt(var);
    return {w, std::min(1.0, 2.0 * normal_cdf(z))};
}

std::vector<double> holm_adjust(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> out(m);
    double running = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double adj = std::min(1.0, static_cast<double>(m - j) * p_values[order[j]]);
        running = std::max(running, adj);
        out[order[j]] = running;
    }
    return out;
}

// ---------------------------------------------------------------------------

CdDiagram cd_diagram(const RankMatrix& ranks, double alpha) {
    CdDiagram d;
    d.models = ranks.models;
    d.mean_ranks = mean_ranks(ranks);
    d.alpha = alpha;
    d.n_series = ranks.ranks.size();
    d.cd = nemenyi_cd(static_cast<int>(ranks.models.size()), d.n_series, alpha);
    d.groups = nemenyi_groups(d.mean_ranks, d.cd);
    return d;
}

} // namespace tsf
