#include "tsf/select.hpp"
#include "tsf/eval.hpp"

#include <fmt/format.h>

#include <cmath>

namespace tsf {

Splitter::Splitter(std::size_t window_length, ForecastingHorizon fh, std::size_t step_length, SplitMode mode,
                   bool start_with_window)
    : window_length_(window_length),
      fh_(std::move(fh)),
      step_length_(step_length),
      mode_(mode),
      start_with_window_(start_with_window) {
    if (fh_.empty() || !fh_.is_out_of_sample()) throw Error(Errc::InvalidArgument, "splitter horizon must be non-empty and positive");
    if (step_length_ < 1) throw Error(Errc::InvalidArgument, "step_length must be positive");
    if (mode_ != SplitMode::Single && window_length_ < 1) throw Error(Errc::InvalidArgument, "window_length must be positive");
}

Splitter Splitter::single(ForecastingHorizon fh) { return Splitter(1, std::move(fh), 1, SplitMode::Single); }

std::vector<Split> Splitter::split(std::size_t series_length) const {
    const auto T = static_cast<std::int64_t>(series_length);
    const auto h = static_cast<std::int64_t>(fh_.max_step());
    const auto w = static_cast<std::int64_t>(window_length_);
    std::vector<Split> out;

    auto make = [&](std::int64_t train_first, std::int64_t train_end) {
        Split s;
        s.train_end = train_end;
        for (std::int64_t i = train_first; i <= train_end; ++i) s.train.push_back(static_cast<std::size_t>(i));
        for (const Index step : fh_.steps()) s.test.push_back(static_cast<std::size_t>(train_end + step));
        out.push_back(std::move(s));
    };

    if (mode_ == SplitMode::Single) {
        if (T - h >= 1) make(0, T - h - 1);
        return out;
    }
    const std::int64_t first_end = start_with_window_ ? w - 1 : -1;
    for (std::int64_t end = first_end; end + h < T; end += static_cast<std::int64_t>(step_length_)) {
        const std::int64_t begin = mode_ == SplitMode::Expanding ? 0 : std::max<std::int64_t>(0, end - w + 1);
        make(begin, end);
    }
    return out;
}

// ---------------------------------------------------------------------------

ParamGrid::ParamGrid(std::map<std::string, std::vector<ParamValue>> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw Error(Errc::InvalidArgument, "parameter grid is empty");
    for (const auto& [key, values] : axes_) {
        if (values.empty()) throw Error(Errc::InvalidArgument, "parameter grid axis '" + key + "' is empty");
    }
}

std::vector<ParamMap> ParamGrid::candidates() const {
    std::vector<ParamMap> out{ParamMap{}};
    // std::map iterates keys in lexicographic order; expanding each axis in
    // turn makes the last key vary fastest.
    for (const auto& [key, values] : axes_) {
        std::vector<ParamMap> next;
        next.reserve(out.size() * values.size());
        for (const auto& partial : out) {
            for (const auto& v : values) {
                auto c = partial;
                c[key] = v;
                next.push_back(std::move(c));
            }
        }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

CandidateResult evaluate_one(const Forecaster& prototype, const ParamMap& params, const std::vector<Split>& splits,
                             const Splitter& cv, const ScoringFn& scoring, const TimeSeries& y) {
    CandidateResult r;
    r.params = params;
    try {
        if (splits.empty()) throw Error(Errc::SeriesTooShort, "series too short for any validation split");
        auto f = prototype.clone();
        f->set_params(params);
        double total = 0.0;
        for (const auto& s : splits) {
            if (s.train.empty()) throw Error(Errc::SeriesTooShort, "validation split with an empty training window");
            const TimeSeries train = y.slice(s.train.front(), s.train.size());
            f->fit(train);
            const auto pred = f->predict(cv.fh()).values;
            std::vector<double> truth;
            truth.reserve(s.test.size());
            for (const auto i : s.test) truth.push_back(y[i]);
            total += scoring ? scoring(truth, pred) : smape(truth, pred);
        }
        r.mean_score = total / static_cast<double>(splits.size());
        if (!std::isfinite(r.mean_score)) {
            r.error = "non-finite score";
            r.mean_score = std::numeric_limits<double>::infinity();
        }
    } catch (const std::exception& e) {
        r.mean_score = std::numeric_limits<double>::infinity();
        r.error = e.what();
    }
    return r;
}

} // namespace

std::vector<CandidateResult> evaluate_candidates(const Forecaster& prototype, const std::vector<ParamMap>& candidates,
                                                 const Splitter& cv, const ScoringFn& scoring, const TimeSeries& y,
                                                 bool parallel) {
    const auto splits = cv.split(y);
    std::vector<CandidateResult> out(candidates.size());
    const auto n = static_cast<std::int64_t>(candidates.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            out[k] = evaluate_one(prototype, candidates[k], splits, cv, scoring, y);
        }
    } else {
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            out[k] = evaluate_one(prototype, candidates[k], splits, cv, scoring, y);
        }
    }
    return out;
}

std::size_t select_best(const std::vector<CandidateResult>& results) {
    std::size_t best = results.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!std::isfinite(results[i].mean_score)) continue;
        if (best == results.size() || results[i].mean_score < results[best].mean_score) best = i;
    }
    if (best == results.size()) {
        std::string detail = results.empty() ? "no candidates" : results.front().error;
        throw Error(Errc::AllCandidatesFailed, "every grid candidate failed: " + detail);
    }
    return best;
}

// ---------------------------------------------------------------------------

GridSearchForecaster::GridSearchForecaster(ForecasterPtr forecaster, ParamGrid grid, Splitter cv, ScoringFn scoring)
    : prototype_(std::move(forecaster)), grid_(std::move(grid)), cv_(std::move(cv)), scoring_(std::move(scoring)) {
    if (!prototype_) throw Error(Errc::InvalidArgument, "grid search needs a forecaster");
    // Surface bad parameter paths at construction rather than as failed candidates.
    auto probe = prototype_->clone();
    for (const auto& [key, values] : grid_.axes()) probe->set_param(key, values.front());
}

GridSearchForecaster::GridSearchForecaster(const GridSearchForecaster& other)
    : Forecaster(other),
      prototype_(other.prototype_->clone()),
      grid_(other.grid_),
      cv_(other.cv_),
      scoring_(other.scoring_),
      parallel_(other.parallel_),
      report_(other.report_),
      best_index_(other.best_index_),
      best_(other.best_ ? other.best_->clone() : nullptr) {}

std::unique_ptr<Forecaster> GridSearchForecaster::clone() const { return std::make_unique<GridSearchForecaster>(*this); }

ParamMap GridSearchForecaster::get_params() const {
    ParamMap out;
    merge_prefixed(out, "forecaster", prototype_->get_params());
    return out;
}

void GridSearchForecaster::set_param(const std::string& name, const ParamValue& value) {
    std::string head, tail;
    if (!split_path(name, head, tail) || head != "forecaster") unknown_param(name);
    prototype_->set_param(tail, value);
    reset();
}

const ParamMap& GridSearchForecaster::best_params() const {
    require_fitted();
    return report_[best_index_].params;
}

double GridSearchForecaster::best_score() const {
    require_fitted();
    return report_[best_index_].mean_score;
}

const Forecaster& GridSearchForecaster::best_forecaster() const {
    require_fitted();
    return *best_;
}

void GridSearchForecaster::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) {
    report_ = evaluate_candidates(*prototype_, grid_.candidates(), cv_, scoring_, y, parallel_);
    best_index_ = select_best(report_);
    best_ = prototype_->clone();
    best_->set_params(report_[best_index_].params);
    best_->fit(y, fh);
}

std::vector<double> GridSearchForecaster::do_predict(std::span<const Index> positions) const {
    return best_->predict_at(positions);
}

void GridSearchForecaster::do_update(const TimeSeries& y_new) { best_->update(y_new); }

FittedParams GridSearchForecaster::do_fitted_params() const {
    FittedParams out{{"best_index", static_cast<double>(best_index_)}, {"best_score", report_[best_index_].mean_score}};
    merge_prefixed(out, "best_forecaster", best_->get_fitted_params());
    return out;
}

} // namespace tsf
