#include "tsf/forecasters.hpp"

namespace tsf {

std::vector<double> theta_forecast(const TimeSeries& y, const ForecastingHorizon& fh) {
    ThetaForecaster f;
    f.fit(y);
    return f.predict(fh).values;
}

void ThetaForecaster::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>&) {
    const auto coef = polynomial_trend(y.view(), 1);
    intercept_ = coef[0];
    slope_ = coef[1];
    origin_ = y.start();

    // theta line 2 = 2y - line 0
    std::vector<double> line2(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        line2[i] = kTheta2 * y[i] - (kTheta2 - 1.0) * (intercept_ + slope_ * static_cast<double>(i));
    }
    ses_ = ses_fit(line2);
    path_ = smoothing_run(line2, ses_);
}

std::vector<double> ThetaForecaster::trend_line(std::span<const Index> positions) const {
    require_fitted();
    std::vector<double> out;
    out.reserve(positions.size());
    for (const Index t : positions) out.push_back(intercept_ + slope_ * static_cast<double>(t - origin_));
    return out;
}

std::vector<double> ThetaForecaster::ses_line(std::span<const Index> positions) const {
    const TimeSeries& y = observed();
    std::vector<double> out;
    out.reserve(positions.size());
    for (const Index t : positions) {
        if (t > y.end()) {
            out.push_back(path_.level);
        } else {
            if (t < y.start()) unsupported_in_sample(t);
            out.push_back(path_.fitted[static_cast<std::size_t>(t - origin_)]);
        }
    }
    return out;
}

std::vector<double> ThetaForecaster::do_predict(std::span<const Index> positions) const {
    const auto line0 = trend_line(positions);
    const auto line2 = ses_line(positions);
    std::vector<double> out(positions.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * line0[i] + 0.5 * line2[i];
    return out;
}

void ThetaForecaster::do_update(const TimeSeries& y_new) {
    std::vector<double> line2(y_new.size());
    for (std::size_t i = 0; i < y_new.size(); ++i) {
        const double t = static_cast<double>(y_new.start() + static_cast<Index>(i) - origin_);
        line2[i] = kTheta2 * y_new[i] - (kTheta2 - 1.0) * (intercept_ + slope_ * t);
    }
    smoothing_extend(path_, line2, ses_);
}

FittedParams ThetaForecaster::do_fitted_params() const {
    return {{"theta1", kTheta1},  {"theta2", kTheta2},       {"intercept", intercept_},
            {"slope", slope_},    {"alpha", ses_.alpha},     {"level", path_.level}};
}

} // namespace tsf
