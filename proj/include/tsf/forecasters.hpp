#pragma once

#include "tsf/core.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tsf {

// ---------------------------------------------------------------------------
// Naive family

enum class NaiveStrategy { Last, SeasonalLast };

/// Last value, or last value of the same season.
std::vector<double> naive_forecast(const TimeSeries& y, NaiveStrategy strategy, int sp,
                                   const ForecastingHorizon& fh);

class NaiveForecaster final : public Forecaster {
public:
    explicit NaiveForecaster(NaiveStrategy strategy = NaiveStrategy::Last, int sp = 1);

    std::unique_ptr<Forecaster> clone() const override { return std::make_unique<NaiveForecaster>(*this); }
    std::string name() const override;
    std::size_t min_length() const override;

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries&) override {}
    FittedParams do_fitted_params() const override;

private:
    NaiveStrategy strategy_;
    int sp_;
};

// ---------------------------------------------------------------------------
// Exponential smoothing

/// Additive-trend exponential smoothing parameters. SES leaves beta and phi
/// empty; Holt sets beta; damped Holt sets beta and phi.
struct SmoothingParams {
    double alpha = 0.0;
    std::optional<double> beta;
    std::optional<double> phi;
    double initial_level = 0.0;
    double initial_trend = 0.0;
};

/// Result of running the smoothing recursions over a series.
struct SmoothingPath {
    /// One-step-ahead fitted values, one per observation.
    std::vector<double> fitted;
    double level = 0.0;
    double trend = 0.0;
    double sse = 0.0;
};

/// Runs level (and trend) recursions from the parameters' initial state.
SmoothingPath smoothing_run(std::span<const double> y, const SmoothingParams& p);

/// Continues the recursions from `path` over new observations.
void smoothing_extend(SmoothingPath& path, std::span<const double> y_new, const SmoothingParams& p);

/// h-step forecast from the final state of `path`.
double smoothing_forecast(const SmoothingPath& path, const SmoothingParams& p, Index h);

/// With `alpha` given, runs the level recursion from initial level y[0].
/// Otherwise picks alpha and the initial level minimizing in-sample one-step SSE.
SmoothingParams ses_fit(std::span<const double> y, std::optional<double> alpha = std::nullopt);

/// Holt's linear trend (damped = false) or damped trend, all parameters by SSE.
SmoothingParams holt_fit(std::span<const double> y, bool damped);

/// Optimization bounds for the damping parameter.
inline constexpr double kPhiLower = 0.80;
inline constexpr double kPhiUpper = 0.98;

class ExponentialSmoothing final : public Forecaster {
public:
    enum class Trend { None, Additive, Damped };

    explicit ExponentialSmoothing(Trend trend = Trend::None, std::optional<double> alpha = std::nullopt);

    std::unique_ptr<Forecaster> clone() const override { return std::make_unique<ExponentialSmoothing>(*this); }
    std::string name() const override;
    std::size_t min_length() const override;

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

    /// Uses `params` as-is instead of optimizing on the next fit.
    void fix_params(const SmoothingParams& params);
    const SmoothingParams& params() const;
    double level() const;

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries& y_new) override;
    FittedParams do_fitted_params() const override;

private:
    Trend trend_;
    std::optional<double> alpha_;
    std::optional<SmoothingParams> fixed_;

    SmoothingParams params_;
    SmoothingPath path_;
};

// ---------------------------------------------------------------------------
// Polynomial trend

/// OLS coefficients of y on (1, t, ..., t^degree) with t = 0, 1, ...
std::vector<double> polynomial_trend(std::span<const double> y, int degree);

class PolynomialTrendForecaster final : public Forecaster {
public:
    explicit PolynomialTrendForecaster(int degree = 1);

    std::unique_ptr<Forecaster> clone() const override { return std::make_unique<PolynomialTrendForecaster>(*this); }
    std::string name() const override { return "PolynomialTrend"; }
    std::size_t min_length() const override { return static_cast<std::size_t>(degree_) + 1; }

    ParamMap get_params() const override;
    void set_param(const std::string& name, const ParamValue& value) override;

    const std::vector<double>& coefficients() const;

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries&) override {}
    FittedParams do_fitted_params() const override;

private:
    int degree_;
    std::vector<double> coef_;
    Index origin_ = 0;
};

// ---------------------------------------------------------------------------
// Theta

/// Classical Theta method: theta line 0 (linear trend) extrapolated linearly,
/// theta line 2 (2y - trend) extrapolated by SES, combined with equal weights.
/// Expects deseasonalized input.
class ThetaForecaster final : public Forecaster {
public:
    ThetaForecaster() = default;

    std::unique_ptr<Forecaster> clone() const override { return std::make_unique<ThetaForecaster>(*this); }
    std::string name() const override { return "Theta"; }
    std::size_t min_length() const override { return 3; }

    ParamMap get_params() const override { return {}; }
    void set_param(const std::string& name, const ParamValue&) override { unknown_param(name); }

    /// Linear extrapolation of theta line 0 at absolute positions.
    std::vector<double> trend_line(std::span<const Index> positions) const;
    /// SES extrapolation of theta line 2 at absolute positions.
    std::vector<double> ses_line(std::span<const Index> positions) const;

    static constexpr double kTheta1 = 0.0;
    static constexpr double kTheta2 = 2.0;

protected:
    void do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>& fh) override;
    std::vector<double> do_predict(std::span<const Index> positions) const override;
    void do_update(const TimeSeries& y_new) override;
    FittedParams do_fitted_params() const override;

private:
    double intercept_ = 0.0;
    double slope_ = 0.0;
    Index origin_ = 0;
    SmoothingParams ses_;
    SmoothingPath path_;
};

/// Convenience: fit a Theta forecaster on y and predict fh.
std::vector<double> theta_forecast(const TimeSeries& y, const ForecastingHorizon& fh);

} // namespace tsf
