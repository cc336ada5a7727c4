#include "tsf/m4.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tsf::m4 {

namespace {

using nlohmann::json;

std::string num(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : "null"; }
std::string str(const std::string& s) { return json(s).dump(); }

double num_field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::numeric_limits<double>::quiet_NaN();
    return it->get<double>();
}

std::string str_field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    return it->get<std::string>();
}

} // namespace

std::string record_json(const RunRecord& r) {
    return fmt::format(R"({{"type":"record","dataset":{},"model":{},"series_id":{},"smape":{},"mase":{},"runtime_s":{},"error":{}}})",
                       str(r.dataset), str(r.model), str(r.series_id), num(r.smape), num(r.mase), num(r.runtime_s),
                       r.error.empty() ? "null" : str(r.error));
}

std::string aggregate_json(const Aggregate& a) {
    return fmt::format(
        R"({{"type":"aggregate","dataset":{},"model":{},"n_series":{},"n_failed":{},"smape":{},"mase":{},"owa":{},"mean_rank_smape":{},"runtime_s":{}}})",
        str(a.dataset), str(a.model), a.n_series, a.n_failed, num(a.smape), num(a.mase), num(a.owa), num(a.mean_rank_smape),
        num(a.runtime_s));
}

void write_results(const std::filesystem::path& path, const std::vector<RunRecord>& records,
                   const std::vector<Aggregate>& aggregates) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    for (const auto& r : records) out << record_json(r) << '\n';
    for (const auto& a : aggregates) out << aggregate_json(a) << '\n';
    if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

Results read_results(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    Results res;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(Errc::MalformedRow, fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
        }
        const auto type = str_field(j, "type");
        if (type == "record") {
            res.records.push_back({str_field(j, "dataset"), str_field(j, "model"), str_field(j, "series_id"),
                                   num_field(j, "smape"), num_field(j, "mase"), num_field(j, "runtime_s"),
                                   str_field(j, "error")});
        } else if (type == "aggregate") {
            Aggregate a;
            a.dataset = str_field(j, "dataset");
            a.model = str_field(j, "model");
            a.n_series = j.value("n_series", std::size_t{0});
            a.n_failed = j.value("n_failed", std::size_t{0});
            a.smape = num_field(j, "smape");
            a.mase = num_field(j, "mase");
            a.owa = num_field(j, "owa");
            a.mean_rank_smape = num_field(j, "mean_rank_smape");
            a.runtime_s = num_field(j, "runtime_s");
            res.aggregates.push_back(a);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------

std::vector<PublishedValue> read_published(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::vector<PublishedValue> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 4) throw Error(Errc::MalformedRow, fmt::format("{}:{}: expected 4 fields", path.string(), line_no));
        try {
            out.push_back({f[0], f[1], f[2], std::stod(f[3])});
        } catch (const std::exception&) {
            throw Error(Errc::MalformedRow, fmt::format("{}:{}: bad value '{}'", path.string(), line_no, f[3]));
        }
    }
    return out;
}

double percentage_difference(double replicated, double published) {
    if (published == 0.0) throw Error(Errc::ZeroDenominator, "published value is zero");
    return 100.0 * (replicated - published) / published;
}

std::vector<ComparisonRow> compare(const std::vector<Aggregate>& aggregates,
                                   const std::vector<PublishedValue>& published, bool strict) {
    std::map<std::tuple<std::string, std::string, std::string>, double> ref;
    for (const auto& p : published) ref[{p.model, p.dataset, p.metric}] = p.value;
    std::vector<ComparisonRow> out;
    for (const auto& a : aggregates) {
        for (const auto& [metric, value] : {std::pair{"smape", a.smape}, std::pair{"mase", a.mase}, std::pair{"owa", a.owa}}) {
            const auto it = ref.find({a.model, a.dataset, metric});
            if (it == ref.end()) {
                if (strict) {
                    throw Error(Errc::MissingReference, fmt::format("no published {} for {} on {}", metric, a.model, a.dataset));
                }
                continue;
            }
            out.push_back({a.model, a.dataset, metric, value, it->second, percentage_difference(value, it->second)});
        }
    }
    if (out.empty() && !aggregates.empty()) throw Error(Errc::MissingReference, "no result has a published reference");
    return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string s = "model,dataset,metric,replicated,published,diff_pct\n";
    for (const auto& r : rows) {
        s += fmt::format("{},{},{},{},{},{}\n", r.model, r.dataset, r.metric, num(r.replicated), num(r.published), num(r.diff_pct));
    }
    return s;
}

std::string comparison_text(const std::vector<ComparisonRow>& rows) {
    std::size_t wm = 5, wd = 7;
    for (const auto& r : rows) {
        wm = std::max(wm, r.model.size());
        wd = std::max(wd, r.dataset.size());
    }
    std::string s = fmt::format("{:<{}}  {:<{}}  {:<6}  {:>10}  {:>10}  {:>8}\n", "model", wm, "dataset", wd, "metric",
                                "replicated", "published", "diff%");
    for (const auto& r : rows) {
        s += fmt::format("{:<{}}  {:<{}}  {:<6}  {:>10.3f}  {:>10.3f}  {:>8.3f}\n", r.model, wm, r.dataset, wd, r.metric,
                         r.replicated, r.published, r.diff_pct);
    }
    return s;
}

// ---------------------------------------------------------------------------

StatTest parse_stat_test(const std::string& s) {
    if (s == "friedman") return StatTest::Friedman;
    if (s == "nemenyi") return StatTest::Nemenyi;
    if (s == "wilcoxon_holm") return StatTest::WilcoxonHolm;
    if (s == "ttest") return StatTest::TTest;
    throw Error(Errc::InvalidArgument, "unknown test '" + s + "'");
}

namespace {

const char* test_name(StatTest t) {
    switch (t) {
        case StatTest::Friedman: return "friedman";
        case StatTest::Nemenyi: return "nemenyi";
        case StatTest::WilcoxonHolm: return "wilcoxon_holm";
        case StatTest::TTest: return "ttest";
    }
    return "";
}

} // namespace

StatsReport stats(const std::vector<RunRecord>& records, StatTest test, Metric metric, double alpha) {
    std::vector<EvalRecord> eval;
    eval.reserve(records.size());
    for (const auto& r : records) {
        if (!r.ok()) throw Error(Errc::IncompleteGrid, fmt::format("{} failed on {}/{}: {}", r.model, r.dataset, r.series_id, r.error));
        eval.push_back({r.dataset + "/" + r.series_id, r.model, r.smape, r.mase, r.runtime_s});
    }
    const RankMatrix ranks = rank_models(eval, metric);
    if (ranks.models.size() < 2) throw Error(Errc::DegenerateInput, "statistics need at least two models");
    const auto mr = mean_ranks(ranks);

    StatsReport rep;
    rep.test = test;
    rep.metric = metric;
    rep.n_series = ranks.series.size();
    for (std::size_t j = 0; j < mr.size(); ++j) rep.mean_ranks.emplace_back(ranks.models[j], mr[j]);
    std::stable_sort(rep.mean_ranks.begin(), rep.mean_ranks.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

    switch (test) {
        case StatTest::Friedman:
            rep.friedman = friedman_test(ranks);
            break;
        case StatTest::Nemenyi:
            rep.friedman = friedman_test(ranks);
            rep.cd = cd_diagram(ranks, alpha);
            break;
        case StatTest::WilcoxonHolm:
        case StatTest::TTest: {
            // Column j of the score grid, series in rank-matrix order.
            std::map<std::pair<std::string, std::string>, double> score;
            for (const auto& e : eval) score[{e.model, e.series_id}] = metric == Metric::Smape ? e.smape : e.mase;
            auto column = [&](const std::string& model) {
                std::vector<double> v;
                v.reserve(ranks.series.size());
                for (const auto& s : ranks.series) v.push_back(score.at({model, s}));
                return v;
            };
            std::vector<double> raw;
            std::vector<std::size_t> valid;
            for (std::size_t a = 0; a < ranks.models.size(); ++a) {
                for (std::size_t b = a + 1; b < ranks.models.size(); ++b) {
                    PairwiseRow row{ranks.models[a], ranks.models[b], 0.0, 1.0, 1.0, false, {}};
                    const auto xa = column(row.model_a);
                    const auto xb = column(row.model_b);
                    try {
                        const auto r = test == StatTest::TTest ? paired_t_test(xa, xb) : wilcoxon_signed_rank(xa, xb);
                        row.statistic = r.statistic;
                        row.p_value = r.p_value;
                        valid.push_back(rep.pairwise.size());
                        raw.push_back(r.p_value);
                    } catch (const Error& e) {
                        // Identical score columns: no evidence of a difference.
                        row.error = errc_name(e.code());
                    }
                    rep.pairwise.push_back(row);
                }
            }
            const auto adj = holm_adjust(raw);
            for (std::size_t i = 0; i < valid.size(); ++i) {
                auto& row = rep.pairwise[valid[i]];
                row.p_holm = adj[i];
                row.significant = adj[i] < alpha;
            }
            break;
        }
    }
    return rep;
}

std::string stats_json(const StatsReport& report) {
    nlohmann::ordered_json j;
    j["test"] = test_name(report.test);
    j["metric"] = report.metric == Metric::Smape ? "smape" : "mase";
    j["n_series"] = report.n_series;
    auto ranks = nlohmann::ordered_json::array();
    for (const auto& [m, r] : report.mean_ranks) ranks.push_back({{"model", m}, {"mean_rank", r}});
    j["mean_ranks"] = ranks;
    if (report.friedman) j["friedman"] = {{"chi2", report.friedman->statistic}, {"p_value", report.friedman->p_value}};
    if (report.cd) j["cd_diagram"] = nlohmann::ordered_json::parse(to_json(*report.cd));
    if (!report.pairwise.empty()) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& p : report.pairwise) {
            nlohmann::ordered_json row{{"pair", p.model_a + " vs " + p.model_b},
                                       {"statistic", p.statistic},
                                       {"p_value", p.p_value},
                                       {"p_holm", p.p_holm},
                                       {"significant", p.significant}};
            if (!p.error.empty()) row["note"] = p.error;
            rows.push_back(row);
        }
        j["pairwise"] = rows;
    }
    return j.dump(2);
}

} // namespace tsf::m4
