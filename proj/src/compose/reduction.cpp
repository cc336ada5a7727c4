#include "tsf/compose.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace tsf {

LaggedTable tabularize(std::span<const double> y, std::size_t window_length) {
    if (window_length < 1) throw Error(Errc::InvalidArgument, "window_length must be positive");
    if (y.size() < window_length + 1) series_too_short("tabularize", window_length + 1, y.size());
    const auto n = static_cast<Eigen::Index>(y.size() - window_length);
    const auto w = static_cast<Eigen::Index>(window_length);
    LaggedTable out;
    out.window_length = window_length;
    out.X.resize(n, w);
    out.targets.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < w; ++j) out.X(i, j) = y[static_cast<std::size_t>(i + j)];
        out.targets[i] = y[static_cast<std::size_t>(i + w)];
    }
    return out;
}

ReducedRegressionForecaster::ReducedRegressionForecaster(RegressorPtr regressor, std::size_t window_length,
                                                         ReductionStrategy strategy)
    : regressor_(std::move(regressor)), window_length_(window_length), strategy_(strategy) {
    if (!regressor_) throw Error(Errc::InvalidArgument, "reduction needs a regressor");
    if (window_length_ < 1) throw Error(Errc::InvalidArgument, "window_length must be positive");
}

ReducedRegressionForecaster::ReducedRegressionForecaster(const ReducedRegressionForecaster& other)
    : Forecaster(other),
      regressor_(other.regressor_->clone()),
      window_length_(other.window_length_),
      strategy_(other.strategy_) {}

namespace {

const char* strategy_name(ReductionStrategy s) {
    switch (s) {
        case ReductionStrategy::Recursive: return "recursive";
        case ReductionStrategy::Direct: return "direct";
        case ReductionStrategy::Hybrid: return "hybrid";
    }
    return "recursive";
}

} // namespace

ParamMap ReducedRegressionForecaster::get_params() const {
    ParamMap out{{"window_length", static_cast<std::int64_t>(window_length_)},
                 {"strategy", std::string(strategy_name(strategy_))}};
    merge_prefixed(out, "regressor", regressor_->get_params());
    return out;
}

void ReducedRegressionForecaster::set_param(const std::string& name, const ParamValue& value) {
    std::string head, tail;
    if (name == "window_length") {
        const auto w = param_as_int(value, name);
        if (w < 1) throw Error(Errc::InvalidArgument, "window_length must be positive");
        window_length_ = static_cast<std::size_t>(w);
    } else if (name == "strategy") {
        const auto s = param_as_string(value, name);
        if (s == "recursive") strategy_ = ReductionStrategy::Recursive;
        else if (s == "direct") strategy_ = ReductionStrategy::Direct;
        else if (s == "hybrid") strategy_ = ReductionStrategy::Hybrid;
        else throw Error(Errc::InvalidArgument, "unknown reduction strategy '" + s + "'");
    } else if (split_path(name, head, tail) && head == "regressor") {
        regressor_->set_param(tail, value);
    } else {
        unknown_param(name);
    }
    reset();
}

void ReducedRegressionForecaster::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>&) {
    if (strategy_ != ReductionStrategy::Recursive) {
        throw Error(Errc::Unimplemented, fmt::format("{} reduction strategy is not implemented", strategy_name(strategy_)));
    }
    const auto table = tabularize(y.view(), window_length_);
    regressor_->fit(table.X, table.targets);
}

std::vector<double> ReducedRegressionForecaster::do_predict(std::span<const Index> positions) const {
    const TimeSeries& y = observed();
    const auto w = static_cast<Index>(window_length_);
    const Index cutoff = y.end();

    Index horizon = 0;
    for (const Index t : positions) horizon = std::max(horizon, t - cutoff);

    // Recursive path: every step 1..horizon, each fed back into the window.
    std::vector<double> window(y.values().end() - w, y.values().end());
    std::vector<double> path;
    path.reserve(static_cast<std::size_t>(horizon));
    for (Index k = 1; k <= horizon; ++k) {
        const double next = regressor_->predict(std::span<const double>(window.data() + k - 1, window_length_));
        path.push_back(next);
        window.push_back(next);
    }

    std::vector<double> out;
    out.reserve(positions.size());
    for (const Index t : positions) {
        if (t > cutoff) {
            out.push_back(path[static_cast<std::size_t>(t - cutoff - 1)]);
        } else {
            if (t - w < y.start()) unsupported_in_sample(t);
            const auto first = static_cast<std::size_t>(t - w - y.start());
            out.push_back(regressor_->predict(y.view().subspan(first, window_length_)));
        }
    }
    return out;
}

FittedParams ReducedRegressionForecaster::do_fitted_params() const {
    FittedParams out{{"window_length", static_cast<double>(window_length_)}};
    if (const auto* lr = dynamic_cast<const LinearRegression*>(regressor_.get())) {
        out["regressor.intercept"] = lr->intercept();
        for (Eigen::Index j = 0; j < lr->coefficients().size(); ++j) {
            out[fmt::format("regressor.coef_{}", j)] = lr->coefficients()[j];
        }
    }
    return out;
}

} // namespace tsf
