#pragma once

#include "tsf/errors.hpp"
#include "tsf/params.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsf {

using Index = std::int64_t;

/// Equidistant real-valued series. Point i sits at time index start + i.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::vector<double> values, Index start = 0, int sp = 1);

    const std::vector<double>& values() const noexcept { return values_; }
    std::span<const double> view() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    Index start() const noexcept { return start_; }
    /// Index of the last observation; start - 1 when empty.
    Index end() const noexcept { return start_ + static_cast<Index>(values_.size()) - 1; }
    int sp() const noexcept { return sp_; }

    double operator[](std::size_t i) const { return values_[i]; }
    double at_index(Index t) const;
    bool contains(Index t) const noexcept { return t >= start_ && t <= end(); }

    std::vector<Index> positions() const;

    /// Copy of points [first, first + count) in positional (0-based) terms.
    TimeSeries slice(std::size_t first, std::size_t count) const;
    TimeSeries head(std::size_t count) const { return slice(0, count); }
    TimeSeries tail(std::size_t count) const;
    /// Appends `next`, which must start at end() + 1.
    TimeSeries concat(const TimeSeries& next) const;
    TimeSeries with_values(std::vector<double> values) const;

private:
    std::vector<double> values_;
    Index start_ = 0;
    int sp_ = 1;
};

/// Steps relative to a cutoff. Strictly increasing, never zero.
class ForecastingHorizon {
public:
    ForecastingHorizon() = default;
    ForecastingHorizon(std::vector<Index> steps);
    ForecastingHorizon(std::initializer_list<Index> steps)
        : ForecastingHorizon(std::vector<Index>(steps)) {}

    /// 1, 2, ..., h
    static ForecastingHorizon ahead(Index h);

    const std::vector<Index>& steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }
    Index max_step() const { return steps_.back(); }
    Index min_step() const { return steps_.front(); }
    bool is_out_of_sample() const noexcept { return !steps_.empty() && steps_.front() > 0; }

    std::vector<Index> to_absolute(Index cutoff) const;

    friend bool operator==(const ForecastingHorizon&, const ForecastingHorizon&) = default;

private:
    std::vector<Index> steps_;
};

struct Forecast {
    ForecastingHorizon horizon;
    std::vector<double> values;
};

class Splitter;

/// Uniform forecaster contract. Derived classes implement the do_* hooks;
/// the base class tracks the cutoff and the observed series.
class Forecaster : public Parameterized {
public:
    Forecaster() = default;
    Forecaster(const Forecaster&) = default;
    Forecaster& operator=(const Forecaster&) = default;
    ~Forecaster() override = default;

    /// Unfitted or fitted deep copy, same hyper-parameters.
    virtual std::unique_ptr<Forecaster> clone() const = 0;
    virtual std::string name() const = 0;

    void fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh = std::nullopt);
    Forecast predict(const ForecastingHorizon& fh) const;

    /// Predictions at absolute time indices. Indices <= cutoff are in-sample,
    /// including the cutoff itself.
    std::vector<double> predict_at(std::span<const Index> positions) const;

    void update(const TimeSeries& y_new, bool update_params = false);

    std::vector<std::pair<Index, Forecast>> update_predict(const TimeSeries& y_test,
                                                           const Splitter& cv,
                                                           bool update_params = false);

    FittedParams get_fitted_params() const;

    bool is_fitted() const noexcept { return cutoff_.has_value(); }
    std::optional<Index> cutoff() const noexcept { return cutoff_; }
    /// Everything seen through fit and update.
    const TimeSeries& observed() const;

    /// Smallest series length fit accepts.
    virtual std::size_t min_length() const { return 1; }

protected:
    virtual void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) = 0;
    virtual std::vector<double> do_predict(std::span<const Index> positions) const = 0;
    /// Advances state over new points without re-estimating parameters.
    /// `observed()` already includes the new points when this runs.
    virtual void do_update(const TimeSeries& y_new) = 0;
    virtual FittedParams do_fitted_params() const = 0;

    /// Drops fitted state; called from set_param implementations.
    void reset() noexcept;
    void require_fitted() const;

    [[noreturn]] void unknown_param(const std::string& name) const;
    [[noreturn]] void unsupported_in_sample(Index position) const;

private:
    std::optional<Index> cutoff_;
    TimeSeries observed_;
};

using ForecasterPtr = std::unique_ptr<Forecaster>;

/// Throws NonFiniteInput unless every value is finite.
void require_finite(std::span<const double> values, std::string_view who);

} // namespace tsf
