#include "tsf/compose.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace tsf {

TransformedTargetForecaster::TransformedTargetForecaster(std::vector<Step> steps, ForecasterPtr forecaster)
    : steps_(std::move(steps)), forecaster_(std::move(forecaster)) {
    if (!forecaster_) throw Error(Errc::InvalidArgument, "pipeline needs a final forecaster");
    std::set<std::string> names{kForecastStep};
    for (const auto& [step_name, t] : steps_) {
        if (!t) throw Error(Errc::InvalidArgument, "pipeline step '" + step_name + "' is empty");
        if (!names.insert(step_name).second) throw Error(Errc::InvalidArgument, "duplicate pipeline step '" + step_name + "'");
    }
}

TransformedTargetForecaster::TransformedTargetForecaster(const TransformedTargetForecaster& other)
    : Forecaster(other), forecaster_(other.forecaster_->clone()) {
    steps_.reserve(other.steps_.size());
    for (const auto& [step_name, t] : other.steps_) steps_.emplace_back(step_name, t->clone());
}

ParamMap TransformedTargetForecaster::get_params() const {
    ParamMap out;
    for (const auto& [step_name, t] : steps_) merge_prefixed(out, step_name, t->get_params());
    merge_prefixed(out, kForecastStep, forecaster_->get_params());
    return out;
}

void TransformedTargetForecaster::set_param(const std::string& name, const ParamValue& value) {
    std::string head, tail;
    if (!split_path(name, head, tail)) unknown_param(name);
    if (head == kForecastStep) {
        forecaster_->set_param(tail, value);
    } else {
        const auto it = std::find_if(steps_.begin(), steps_.end(), [&](const Step& s) { return s.first == head; });
        if (it == steps_.end()) unknown_param(name);
        it->second->set_param(tail, value);
    }
    reset();
}

void TransformedTargetForecaster::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) {
    TimeSeries z = y;
    for (auto& [step_name, t] : steps_) {
        t->fit(z);
        z = t->transform(z);
    }
    forecaster_->fit(z, fh);
}

std::vector<double> TransformedTargetForecaster::do_predict(std::span<const Index> positions) const {
    auto values = forecaster_->predict_at(positions);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) values = it->second->inverse_transform(positions, values);
    return values;
}

void TransformedTargetForecaster::do_update(const TimeSeries& y_new) {
    TimeSeries z = y_new;
    for (auto& [step_name, t] : steps_) {
        t->update(z);
        z = t->transform(z);
    }
    forecaster_->update(z);
}

FittedParams TransformedTargetForecaster::do_fitted_params() const {
    FittedParams out;
    for (const auto& [step_name, t] : steps_) merge_prefixed(out, step_name, t->get_fitted_params());
    merge_prefixed(out, kForecastStep, forecaster_->get_fitted_params());
    return out;
}

// ---------------------------------------------------------------------------

EnsembleForecaster::EnsembleForecaster(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw Error(Errc::InvalidArgument, "ensemble needs at least one forecaster");
    std::set<std::string> names;
    for (const auto& [component_name, f] : components_) {
        if (!f) throw Error(Errc::InvalidArgument, "ensemble component '" + component_name + "' is empty");
        if (!names.insert(component_name).second) {
            throw Error(Errc::InvalidArgument, "duplicate ensemble component '" + component_name + "'");
        }
    }
}

EnsembleForecaster::EnsembleForecaster(const EnsembleForecaster& other) : Forecaster(other) {
    components_.reserve(other.components_.size());
    for (const auto& [component_name, f] : other.components_) components_.emplace_back(component_name, f->clone());
}

std::size_t EnsembleForecaster::min_length() const {
    std::size_t out = 1;
    for (const auto& c : components_) out = std::max(out, c.second->min_length());
    return out;
}

ParamMap EnsembleForecaster::get_params() const {
    ParamMap out;
    for (const auto& [component_name, f] : components_) merge_prefixed(out, component_name, f->get_params());
    return out;
}

void EnsembleForecaster::set_param(const std::string& name, const ParamValue& value) {
    std::string head, tail;
    if (!split_path(name, head, tail)) unknown_param(name);
    const auto it = std::find_if(components_.begin(), components_.end(), [&](const Component& c) { return c.first == head; });
    if (it == components_.end()) unknown_param(name);
    it->second->set_param(tail, value);
    reset();
}

void EnsembleForecaster::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) {
    for (auto& c : components_) c.second->fit(y, fh);
}

std::vector<double> EnsembleForecaster::do_predict(std::span<const Index> positions) const {
    std::vector<double> sum(positions.size(), 0.0);
    for (const auto& c : components_) {
        const auto values = c.second->predict_at(positions);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += values[i];
    }
    const auto k = static_cast<double>(components_.size());
    for (double& v : sum) v /= k;
    return sum;
}

void EnsembleForecaster::do_update(const TimeSeries& y_new) {
    for (auto& c : components_) c.second->update(y_new);
}

FittedParams EnsembleForecaster::do_fitted_params() const {
    FittedParams out;
    for (const auto& [component_name, f] : components_) merge_prefixed(out, component_name, f->get_fitted_params());
    return out;
}

} // namespace tsf
