#include "tsf/forecasters.hpp"

#include <fmt/format.h>

namespace tsf {

namespace {

Index ceil_div(Index a, Index b) { return (a + b - 1) / b; }

double seasonal_lookup(const TimeSeries& y, Index cutoff, int sp, Index t) {
    const Index back = static_cast<Index>(sp) * ceil_div(t - cutoff, sp);
    return y.at_index(t - back);
}

} // namespace

std::vector<double> naive_forecast(const TimeSeries& y, NaiveStrategy strategy, int sp,
                                   const ForecastingHorizon& fh) {
    NaiveForecaster f(strategy, sp);
    f.fit(y);
    return f.predict(fh).values;
}

NaiveForecaster::NaiveForecaster(NaiveStrategy strategy, int sp) : strategy_(strategy), sp_(sp) {
    if (sp < 1) throw Error(Errc::InvalidArgument, "sp must be positive");
}

std::string NaiveForecaster::name() const {
    return strategy_ == NaiveStrategy::Last ? "Naive" : "sNaive";
}

std::size_t NaiveForecaster::min_length() const {
    return strategy_ == NaiveStrategy::Last ? 1 : static_cast<std::size_t>(sp_);
}

ParamMap NaiveForecaster::get_params() const {
    return {{"strategy", std::string(strategy_ == NaiveStrategy::Last ? "last" : "seasonal_last")},
            {"sp", static_cast<std::int64_t>(sp_)}};
}

void NaiveForecaster::set_param(const std::string& key, const ParamValue& value) {
    if (key == "strategy") {
        const auto s = param_as_string(value, key);
        if (s == "last") strategy_ = NaiveStrategy::Last;
        else if (s == "seasonal_last") strategy_ = NaiveStrategy::SeasonalLast;
        else throw Error(Errc::InvalidArgument, "unknown naive strategy '" + s + "'");
    } else if (key == "sp") {
        const auto sp = param_as_int(value, key);
        if (sp < 1) throw Error(Errc::InvalidArgument, "sp must be positive");
        sp_ = static_cast<int>(sp);
    } else {
        unknown_param(key);
    }
    reset();
}

void NaiveForecaster::do_fit(const TimeSeries&, const std::optional<ForecastingHorizon>&) {}

std::vector<double> NaiveForecaster::do_predict(std::span<const Index> positions) const {
    const TimeSeries& y = observed();
    const Index cutoff = y.end();
    const Index lag = strategy_ == NaiveStrategy::Last ? 1 : sp_;
    std::vector<double> out;
    out.reserve(positions.size());
    for (const Index t : positions) {
        if (t > cutoff) {
            out.push_back(strategy_ == NaiveStrategy::Last ? y.at_index(cutoff) : seasonal_lookup(y, cutoff, sp_, t));
        } else {
            // in-sample: lagged observation
            if (t - lag < y.start()) unsupported_in_sample(t);
            out.push_back(y.at_index(t - lag));
        }
    }
    return out;
}

FittedParams NaiveForecaster::do_fitted_params() const {
    const TimeSeries& y = observed();
    if (strategy_ == NaiveStrategy::Last) return {{"last", y.at_index(y.end())}};
    FittedParams out;
    const auto season = y.tail(static_cast<std::size_t>(sp_));
    for (std::size_t i = 0; i < season.size(); ++i) out[fmt::format("last_season_{}", i)] = season[i];
    return out;
}

} // namespace tsf
