#include "tsf/core.hpp"
#include "tsf/select.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace tsf {

void require_finite(std::span<const double> values, std::string_view who) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(Errc::NonFiniteInput, fmt::format("{}: value at offset {} is not finite", who, i));
        }
    }
}

// ---------------------------------------------------------------------------
// TimeSeries

TimeSeries::TimeSeries(std::vector<double> values, Index start, int sp)
    : values_(std::move(values)), start_(start), sp_(sp) {
    if (sp_ < 1) throw Error(Errc::InvalidArgument, "seasonal periodicity must be positive");
    require_finite(values_, "TimeSeries");
}

double TimeSeries::at_index(Index t) const {
    if (!contains(t)) {
        throw Error(Errc::InvalidArgument, fmt::format("time index {} outside [{}, {}]", t, start_, end()));
    }
    return values_[static_cast<std::size_t>(t - start_)];
}

std::vector<Index> TimeSeries::positions() const {
    std::vector<Index> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = start_ + static_cast<Index>(i);
    return out;
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > values_.size()) throw Error(Errc::InvalidArgument, "slice out of range");
    TimeSeries out;
    out.values_.assign(values_.begin() + static_cast<std::ptrdiff_t>(first),
                       values_.begin() + static_cast<std::ptrdiff_t>(first + count));
    out.start_ = start_ + static_cast<Index>(first);
    out.sp_ = sp_;
    return out;
}

TimeSeries TimeSeries::tail(std::size_t count) const {
    count = std::min(count, values_.size());
    return slice(values_.size() - count, count);
}

TimeSeries TimeSeries::concat(const TimeSeries& next) const {
    if (next.empty()) return *this;
    if (empty()) return next;
    if (next.start_ != end() + 1) {
        throw Error(Errc::NonContiguousUpdate,
                    fmt::format("series starting at {} does not follow index {}", next.start_, end()));
    }
    TimeSeries out = *this;
    out.values_.insert(out.values_.end(), next.values_.begin(), next.values_.end());
    return out;
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    if (values.size() != values_.size()) throw Error(Errc::LengthMismatch, "with_values: length differs");
    return TimeSeries(std::move(values), start_, sp_);
}

// ---------------------------------------------------------------------------
// ForecastingHorizon

ForecastingHorizon::ForecastingHorizon(std::vector<Index> steps) : steps_(std::move(steps)) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (steps_[i] == 0) throw Error(Errc::InvalidArgument, "forecasting horizon contains step 0");
        if (i > 0 && steps_[i] <= steps_[i - 1]) {
            throw Error(Errc::InvalidArgument, "forecasting horizon steps must be strictly increasing");
        }
    }
}

ForecastingHorizon ForecastingHorizon::ahead(Index h) {
    if (h < 1) throw Error(Errc::InvalidArgument, "horizon length must be positive");
    std::vector<Index> steps(static_cast<std::size_t>(h));
    for (Index i = 0; i < h; ++i) steps[static_cast<std::size_t>(i)] = i + 1;
    return ForecastingHorizon(std::move(steps));
}

std::vector<Index> ForecastingHorizon::to_absolute(Index cutoff) const {
    std::vector<Index> out(steps_.size());
    std::transform(steps_.begin(), steps_.end(), out.begin(), [cutoff](Index s) { return cutoff + s; });
    return out;
}

// ---------------------------------------------------------------------------
// Forecaster

void Forecaster::fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) {
    reset();
    require_finite(y.view(), name());
    if (y.size() < std::max<std::size_t>(1, min_length())) series_too_short(name(), std::max<std::size_t>(1, min_length()), y.size());
    do_fit(y, fh);
    observed_ = y;
    cutoff_ = y.end();
}

Forecast Forecaster::predict(const ForecastingHorizon& fh) const {
    require_fitted();
    const auto positions = fh.to_absolute(*cutoff_);
    return Forecast{fh, predict_at(positions)};
}

std::vector<double> Forecaster::predict_at(std::span<const Index> positions) const {
    require_fitted();
    auto values = do_predict(positions);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(Errc::NonFiniteForecast,
                        fmt::format("{} produced a non-finite value at index {}", name(), positions[i]));
        }
    }
    return values;
}

void Forecaster::update(const TimeSeries& y_new, bool update_params) {
    require_fitted();
    if (y_new.empty()) return;
    if (y_new.start() != *cutoff_ + 1) {
        throw Error(Errc::NonContiguousUpdate,
                    fmt::format("update starts at {}, expected {}", y_new.start(), *cutoff_ + 1));
    }
    require_finite(y_new.view(), name());
    TimeSeries all = observed_.concat(y_new);
    if (update_params) {
        fit(all);
        return;
    }
    observed_ = std::move(all);
    cutoff_ = observed_.end();
    do_update(y_new);
}

std::vector<std::pair<Index, Forecast>> Forecaster::update_predict(const TimeSeries& y_test,
                                                                   const Splitter& cv,
                                                                   bool update_params) {
    require_fitted();
    if (!y_test.empty() && y_test.start() != *cutoff_ + 1) {
        throw Error(Errc::NonContiguousUpdate,
                    fmt::format("test series starts at {}, expected {}", y_test.start(), *cutoff_ + 1));
    }
    std::vector<std::pair<Index, Forecast>> out;
    std::int64_t seen = -1;  // last offset of y_test already fed to update
    for (const auto& s : cv.split(y_test)) {
        if (s.train_end > seen) {
            const auto first = static_cast<std::size_t>(seen + 1);
            const auto count = static_cast<std::size_t>(s.train_end - seen);
            update(y_test.slice(first, count), update_params);
            seen = s.train_end;
        }
        out.emplace_back(*cutoff_, predict(cv.fh()));
    }
    return out;
}

FittedParams Forecaster::get_fitted_params() const {
    require_fitted();
    return do_fitted_params();
}

const TimeSeries& Forecaster::observed() const {
    require_fitted();
    return observed_;
}

void Forecaster::reset() noexcept {
    cutoff_.reset();
    observed_ = TimeSeries();
}

void Forecaster::require_fitted() const {
    if (!cutoff_) throw Error(Errc::NotFitted, name() + " is not fitted");
}

void Forecaster::unknown_param(const std::string& param) const {
    throw Error(Errc::UnknownParameter, fmt::format("{} has no parameter '{}'", name(), param));
}

void Forecaster::unsupported_in_sample(Index position) const {
    throw Error(Errc::UnsupportedInSample,
                fmt::format("{} cannot predict in-sample index {}", name(), position));
}

} // namespace tsf
