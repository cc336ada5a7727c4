#pragma once

#include "tsf/core.hpp"
#include "tsf/regress.hpp"
#include "tsf/transforms.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace tsf {

/// Sliding windows over a series. Row i holds (y_i, ..., y_{i+w-1}), oldest
/// first, and targets[i] = y_{i+w}.
struct LaggedTable {
    Eigen::MatrixXd X;
    Eigen::VectorXd targets;
    std::size_t window_length = 0;
};

LaggedTable tabularize(std::span<const double> y, std::size_t window_length);

enum class ReductionStrategy { Recursive, Direct, Hybrid };

/// Forecasting by reduction to tabular regression over lagged windows.
/// Only the recursive strategy is implemented.
class ReducedRegressionForecaster final : public Forecaster {
public:
    ReducedRegressionForecaster(RegressorPtr regressor, std::size_t window_length = 10,
                                ReductionStrategy strategy = ReductionStrategy::Recursive);
    ReducedRegressionForecaster(const ReducedRegressionForecaster& other);

    std::unique_ptr<Forecaster> clone() const override {
        return std::make_unique<ReducedRegressionForecaster>(*this);
    }
    std::string name() const override { return "ReducedRegression"; }
    std::size_t min_length() const override { return window_length_ + 1; }

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

    std::size_t window_length() const noexcept { return window_length_; }
    const Regressor& regressor() const noexcept { return *regressor_; }

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries&) override {}
    FittedParams do_fitted_params() const override;

private:
    RegressorPtr regressor_;
    std::size_t window_length_;
    ReductionStrategy strategy_;
};

/// Transformers applied in order to the target, then a final forecaster.
/// Predictions pass back through the inverse transforms in reverse order.
/// Parameters are addressed as "<step>.<param>"; the forecaster step is
/// called "forecast".
class TransformedTargetForecaster final : public Forecaster {
public:
    using Step = std::pair<std::string, TransformerPtr>;

    TransformedTargetForecaster(std::vector<Step> steps, ForecasterPtr forecaster);
    TransformedTargetForecaster(const TransformedTargetForecaster& other);

    std::unique_ptr<Forecaster> clone() const override {
        return std::make_unique<TransformedTargetForecaster>(*this);
    }
    std::string name() const override { return "TransformedTarget"; }
    std::size_t min_length() const override { return forecaster_->min_length(); }

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

    const std::vector<Step>& steps() const noexcept { return steps_; }
    const Forecaster& forecaster() const noexcept { return *forecaster_; }

    static constexpr const char* kForecastStep = "forecast";

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries& y_new) override;
    FittedParams do_fitted_params() const override;

private:
    std::vector<Step> steps_;
    ForecasterPtr forecaster_;
};

/// Unweighted mean of independently fitted forecasters. Parameters are
/// addressed as "<component>.<param>".
class EnsembleForecaster final : public Forecaster {
public:
    using Component = std::pair<std::string, ForecasterPtr>;

    explicit EnsembleForecaster(std::vector<Component> components);
    EnsembleForecaster(const EnsembleForecaster& other);

    std::unique_ptr<Forecaster> clone() const override { return std::make_unique<EnsembleForecaster>(*this); }
    std::string name() const override { return "Ensemble"; }
    std::size_t min_length() const override;

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

    const std::vector<Component>& components() const noexcept { return components_; }

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries& y_new) override;
    FittedParams do_fitted_params() const override;

private:
    std::vector<Component> components_;
};

} // namespace tsf
