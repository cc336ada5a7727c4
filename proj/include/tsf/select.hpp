#pragma once

#include "tsf/core.hpp"

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsf {

/// One temporal train/test split. Positions are 0-based offsets into the
/// split series. An empty train window (start_with_window = false) is allowed.
struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    /// Offset of the last train point; -1 for an empty train window.
    std::int64_t train_end = -1;
};

enum class SplitMode { Sliding, Expanding, Single };

/// Temporal cross-validation splitter.
///
/// Sliding windows have fixed length `window_length` and advance by
/// `step_length`. Expanding windows always start at offset 0. Single emits
/// one split whose validation block is the last max(fh) points.
class Splitter {
public:
    Splitter(std::size_t window_length, ForecastingHorizon fh, std::size_t step_length = 1,
             SplitMode mode = SplitMode::Sliding, bool start_with_window = true);

    static Splitter single(ForecastingHorizon fh);

    std::vector<Split> split(std::size_t series_length) const;
    std::vector<Split> split(const TimeSeries& y) const { return split(y.size()); }

    const ForecastingHorizon& fh() const noexcept { return fh_; }
    std::size_t window_length() const noexcept { return window_length_; }
    std::size_t step_length() const noexcept { return step_length_; }
    SplitMode mode() const noexcept { return mode_; }

private:
    std::size_t window_length_;
    ForecastingHorizon fh_;
    std::size_t step_length_;
    SplitMode mode_;
    bool start_with_window_;
};

/// Lower is better.
using ScoringFn = std::function<double(std::span<const double> y_true, std::span<const double> y_pred)>;

/// Ordered parameter grid. Keys are enumerated in lexicographic order with
/// the last key varying fastest.
class ParamGrid {
public:
    ParamGrid() = default;
    ParamGrid(std::map<std::string, std::vector<ParamValue>> axes);

    std::vector<ParamMap> candidates() const;
    const std::map<std::string, std::vector<ParamValue>>& axes() const noexcept { return axes_; }

private:
    std::map<std::string, std::vector<ParamValue>> axes_;
};

struct CandidateResult {
    ParamMap params;
    /// Mean score over splits; +inf when the candidate errored on any split.
    double mean_score = std::numeric_limits<double>::infinity();
    std::string error;
};

/// Mean cross-validated score of each candidate, in grid order. The parallel
/// variant distributes candidates over OpenMP threads and produces the same
/// values as the serial one.
std::vector<CandidateResult> evaluate_candidates(const Forecaster& prototype,
                                                 const std::vector<ParamMap>& candidates,
                                                 const Splitter& cv, const ScoringFn& scoring,
                                                 const TimeSeries& y, bool parallel = false);

/// Index of the minimum score; ties go to the earliest candidate.
/// Throws AllCandidatesFailed when no score is finite.
std::size_t select_best(const std::vector<CandidateResult>& results);

/// Grid-search tuning meta-forecaster. Fits the best candidate on the full
/// series after cross-validated selection.
class GridSearchForecaster final : public Forecaster {
public:
    GridSearchForecaster(ForecasterPtr forecaster, ParamGrid grid, Splitter cv,
                         ScoringFn scoring = {});
    GridSearchForecaster(const GridSearchForecaster& other);

    std::unique_ptr<Forecaster> clone() const override;
    std::string name() const override { return "GridSearch"; }

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

    const ParamMap& best_params() const;
    double best_score() const;
    const std::vector<CandidateResult>& report() const noexcept { return report_; }
    const Forecaster& best_forecaster() const;

    void set_parallel(bool parallel) noexcept { parallel_ = parallel; }

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries& y_new) override;
    FittedParams do_fitted_params() const override;

private:
    ForecasterPtr prototype_;
    ParamGrid grid_;
    Splitter cv_;
    ScoringFn scoring_;
    bool parallel_ = false;

    std::vector<CandidateResult> report_;
    std::size_t best_index_ = 0;
    ForecasterPtr best_;
};

} // namespace tsf
