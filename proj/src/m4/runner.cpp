#include "tsf/m4.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace tsf::m4 {

namespace {

constexpr const char* kReference = "Naive2";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return kNaN;
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

RunRecord evaluate_series(const std::string& model, const DatasetSpec& spec, const Series& series,
                          const RunConfig& config) {
    RunRecord r{spec.name, model, series.id, kNaN, kNaN, 0.0, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto f = build_model(model, spec.sp, spec.horizon, config.registry);
        const auto fh = ForecastingHorizon::ahead(spec.horizon);
        f->fit(series.train, fh);
        const auto pred = f->predict(fh).values;
        r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.smape = smape(series.test, pred);
        r.mase = mase(series.test, pred, series.train.view(), spec.sp, config.mase_denominator);
    } catch (const std::exception& e) {
        r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.smape = kNaN;
        r.mase = kNaN;
        r.error = e.what();
        if (r.error.empty()) r.error = "unknown error";
    }
    return r;
}

std::vector<std::string> effective_models(const std::vector<std::string>& models) {
    std::vector<std::string> out;
    if (std::find(models.begin(), models.end(), kReference) == models.end()) out.emplace_back(kReference);
    for (const auto& m : models) {
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

std::vector<RunRecord> run_dataset_serial(const DatasetSpec& spec, const std::vector<Series>& data,
                                          const RunConfig& config) {
    const auto models = effective_models(config.models);
    std::vector<RunRecord> out;
    out.reserve(models.size() * data.size());
    for (const auto& m : models) {
        for (const auto& s : data) out.push_back(evaluate_series(m, spec, s, config));
    }
    return out;
}

std::vector<RunRecord> run_dataset(const DatasetSpec& spec, const std::vector<Series>& data, const RunConfig& config) {
    if (config.jobs <= 1) return run_dataset_serial(spec, data, config);
    const auto models = effective_models(config.models);
    // Fail on unknown names up front rather than once per series.
    for (const auto& m : models) build_model(m, spec.sp, spec.horizon, config.registry);

    const auto n_series = static_cast<std::int64_t>(data.size());
    const auto n_tasks = static_cast<std::int64_t>(models.size()) * n_series;
    std::vector<RunRecord> out(static_cast<std::size_t>(n_tasks));
#pragma omp parallel for schedule(dynamic) num_threads(config.jobs)
    for (std::int64_t task = 0; task < n_tasks; ++task) {
        const auto& m = models[static_cast<std::size_t>(task / n_series)];
        const auto& s = data[static_cast<std::size_t>(task % n_series)];
        out[static_cast<std::size_t>(task)] = evaluate_series(m, spec, s, config);
    }
    return out;
}

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records) {
    std::vector<std::pair<std::string, std::string>> keys;
    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
    for (const auto& r : records) {
        auto key = std::make_pair(r.dataset, r.model);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) keys.push_back(key);
        it->second.push_back(&r);
    }

    // Per dataset: ranks over series on which every model succeeded.
    std::map<std::string, std::map<std::string, double>> dataset_ranks;
    {
        std::map<std::string, std::vector<std::string>> models_of;
        std::map<std::string, std::map<std::string, std::map<std::string, double>>> score;  // dataset -> series -> model
        for (const auto& [key, rs] : groups) {
            models_of[key.first].push_back(key.second);
            for (const auto* r : rs) {
                if (r->ok() && std::isfinite(r->smape)) score[key.first][r->series_id][key.second] = r->smape;
            }
        }
        for (const auto& [ds, models] : models_of) {
            std::vector<std::vector<double>> rows;
            std::vector<std::string> series;
            for (const auto& [sid, by_model] : score[ds]) {
                if (by_model.size() != models.size()) continue;
                std::vector<double> row;
                for (const auto& m : models) row.push_back(by_model.at(m));
                rows.push_back(std::move(row));
                series.push_back(sid);
            }
            auto& out = dataset_ranks[ds];
            if (rows.empty()) {
                for (const auto& m : models) out[m] = kNaN;
                continue;
            }
            const auto ranks = mean_ranks(rank_scores(models, series, rows));
            for (std::size_t j = 0; j < models.size(); ++j) out[models[j]] = ranks[j];
        }
    }

    std::vector<Aggregate> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        const auto& rs = groups[key];
        Aggregate a;
        a.dataset = key.first;
        a.model = key.second;
        a.n_series = rs.size();
        std::vector<double> s, m;
        std::map<std::string, const RunRecord*> by_series;
        for (const auto* r : rs) {
            a.runtime_s += r->runtime_s;
            if (!r->ok()) {
                ++a.n_failed;
                continue;
            }
            s.push_back(r->smape);
            m.push_back(r->mase);
            by_series[r->series_id] = r;
        }
        a.smape = mean_of(s);
        a.mase = mean_of(m);
        a.mean_rank_smape = dataset_ranks[a.dataset][a.model];

        a.owa = kNaN;
        const auto ref = groups.find({a.dataset, kReference});
        if (ref != groups.end()) {
            std::vector<double> ms, mm, rs2, rm;
            for (const auto* r : ref->second) {
                if (!r->ok()) continue;
                const auto it = by_series.find(r->series_id);
                if (it == by_series.end()) continue;
                ms.push_back(it->second->smape);
                mm.push_back(it->second->mase);
                rs2.push_back(r->smape);
                rm.push_back(r->mase);
            }
            if (!ms.empty()) a.owa = owa(mean_of(ms), mean_of(mm), mean_of(rs2), mean_of(rm));
        }
        out.push_back(a);
    }
    return out;
}

} // namespace tsf::m4
