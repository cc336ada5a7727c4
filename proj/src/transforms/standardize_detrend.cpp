#include "tsf/transforms.hpp"

#include <cmath>
#include <numeric>

namespace tsf {

StandardizeParams standardize_fit(std::span<const double> y) {
    if (y.empty()) series_too_short("Standardizer", 1, 0);
    const auto n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0.0;
    for (const double v : y) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    return {mean, sd > 0.0 ? sd : 1.0};
}

const StandardizeParams& Standardizer::params() const {
    require_fitted();
    return params_;
}

void Standardizer::do_fit(const TimeSeries& y) { params_ = standardize_fit(y.view()); }

std::vector<double> Standardizer::do_transform(std::span<const Index>, std::span<const double> values) const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (values[i] - params_.mean) / params_.std;
    return out;
}

std::vector<double> Standardizer::do_inverse(std::span<const Index>, std::span<const double> values) const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i] * params_.std + params_.mean;
    return out;
}

// ---------------------------------------------------------------------------

Detrender::Detrender(ForecasterPtr forecaster) : forecaster_(std::move(forecaster)) {
    if (!forecaster_) throw Error(Errc::InvalidArgument, "Detrender needs a forecaster");
}

Detrender::Detrender(const Detrender& other) : Transformer(other), forecaster_(other.forecaster_->clone()) {}

ParamMap Detrender::get_params() const {
    ParamMap out;
    merge_prefixed(out, "forecaster", forecaster_->get_params());
    return out;
}

void Detrender::set_param(const std::string& key, const ParamValue& value) {
    std::string head, tail;
    if (!split_path(key, head, tail) || head != "forecaster") unknown_param(key);
    forecaster_->set_param(tail, value);
    reset();
}

void Detrender::update(const TimeSeries& y_new) {
    require_fitted();
    forecaster_->update(y_new);
}

void Detrender::do_fit(const TimeSeries& y) { forecaster_->fit(y); }

std::vector<double> Detrender::do_transform(std::span<const Index> positions, std::span<const double> values) const {
    auto out = forecaster_->predict_at(positions);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i] - out[i];
    return out;
}

std::vector<double> Detrender::do_inverse(std::span<const Index> positions, std::span<const double> values) const {
    auto out = forecaster_->predict_at(positions);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += values[i];
    return out;
}

FittedParams Detrender::do_fitted_params() const {
    FittedParams out;
    merge_prefixed(out, "forecaster", forecaster_->get_fitted_params());
    return out;
}

} // namespace tsf
