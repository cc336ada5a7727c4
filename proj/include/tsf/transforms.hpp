#pragma once

#include "tsf/core.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tsf {

/// Single-series transformer with fit / transform / inverse_transform.
/// Transforms are position-aware: values are paired with absolute time indices,
/// which need not be contiguous.
class Transformer : public Parameterized {
public:
    ~Transformer() override = default;

    virtual std::unique_ptr<Transformer> clone() const = 0;
    virtual std::string name() const = 0;

    void fit(const TimeSeries& y);
    bool is_fitted() const noexcept { return fitted_; }

    std::vector<double> transform(std::span<const Index> positions, std::span<const double> values) const;
    std::vector<double> inverse_transform(std::span<const Index> positions, std::span<const double> values) const;

    TimeSeries transform(const TimeSeries& y) const;
    TimeSeries inverse_transform(const TimeSeries& y) const;

    /// Advances any state that depends on the observed series (the detrender's
    /// forecaster). Fitted transform parameters stay fixed.
    virtual void update(const TimeSeries& y_new) { (void)y_new; }

    FittedParams get_fitted_params() const;

protected:
    virtual void do_fit(const TimeSeries& y) = 0;
    virtual std::vector<double> do_transform(std::span<const Index> positions, std::span<const double> values) const = 0;
    virtual std::vector<double> do_inverse(std::span<const Index> positions, std::span<const double> values) const = 0;
    virtual FittedParams do_fitted_params() const = 0;

    void reset() noexcept { fitted_ = false; }
    void require_fitted() const;
    [[noreturn]] void unknown_param(const std::string& key) const;

private:
    bool fitted_ = false;
};

using TransformerPtr = std::unique_ptr<Transformer>;

// ---------------------------------------------------------------------------
// Seasonal adjustment

/// Lag-k sample autocorrelation. Zero-variance input yields 0.
double autocorrelation(std::span<const double> y, std::size_t lag);

enum class SeasonalityTestVariant {
    /// |r_sp| > z * sqrt((1 + 2 * sum_{i<sp} r_i^2) / T)
    Standard,
    /// As in the M4 Python benchmark code, where r_1 enters the sum unsquared.
    M4Python,
};

struct SeasonalityTestConfig {
    /// Critical value for the 90% level.
    double z = 1.645;
    /// Minimum number of full cycles; shorter series are declared non-seasonal.
    int min_cycles = 3;
    SeasonalityTestVariant variant = SeasonalityTestVariant::Standard;
};

bool seasonality_test(std::span<const double> y, int sp, const SeasonalityTestConfig& config = {});

struct SeasonalIndices {
    std::vector<double> indices;
    /// Time index at which indices[0] applies.
    Index phase = 0;
    int sp = 1;
    bool applied = false;

    /// Seasonal factor at absolute time index t (1 when not applied).
    double at(Index t) const;
};

/// Classical multiplicative decomposition: centred moving-average trend,
/// per-position mean of y / trend, normalised to mean 1. indices[0] applies
/// to y[0].
std::vector<double> classical_decompose(std::span<const double> y, int sp);

/// Seasonality test, then classical decomposition when the test passes.
SeasonalIndices deseasonalize_fit(const TimeSeries& y, int sp, const SeasonalityTestConfig& config = {});

class Deseasonalizer final : public Transformer {
public:
    explicit Deseasonalizer(int sp = 1, SeasonalityTestConfig config = {});

    std::unique_ptr<Transformer> clone() const override { return std::make_unique<Deseasonalizer>(*this); }
    std::string name() const override { return "Deseasonalizer"; }

    ParamMap get_params() const override;
    void set_param(const std::string& key, const ParamValue& value) override;

    const SeasonalIndices& seasonal() const;

protected:
    void do_fit(const TimeSeries& y) override;
    std::vector<double> do_transform(std::span<const Index> positions, std::span<const double> values) const override;
    std::vector<double> do_inverse(std::span<const Index> positions, std::span<const double> values) const override;
    FittedParams do_fitted_params() const override;

private:
    int sp_;
    SeasonalityTestConfig config_;
    SeasonalIndices seasonal_;
};

// ---------------------------------------------------------------------------
// Box-Cox

inline constexpr double kBoxCoxLower = 1e-4;
inline constexpr double kBoxCoxUpper = 1.0 - 1e-4;

/// Gaussian profile log-likelihood of the Box-Cox transformed series,
/// including the Jacobian term (lambda - 1) * sum(log y).
double boxcox_loglik(std::span<const double> y, double lambda);

/// Maximum-likelihood lambda on [kBoxCoxLower, kBoxCoxUpper].
double boxcox_fit(std::span<const double> y);

double boxcox(double y, double lambda);
/// Inverse transform. Values below -1/lambda map to 0.
double inv_boxcox(double x, double lambda);

class BoxCoxTransformer final : public Transformer {
public:
    BoxCoxTransformer() = default;

    std::unique_ptr<Transformer> clone() const override { return std::make_unique<BoxCoxTransformer>(*this); }
    std::string name() const override { return "BoxCox"; }

    ParamMap get_params() const override { return {}; }
    void set_param(const std::string& key, const ParamValue&) override { unknown_param(key); }

    double lambda() const;

protected:
    void do_fit(const TimeSeries& y) override;
    std::vector<double> do_transform(std::span<const Index> positions, std::span<const double> values) const override;
    std::vector<double> do_inverse(std::span<const Index> positions, std::span<const double> values) const override;
    FittedParams do_fitted_params() const override { return {{"lambda", lambda_}}; }

private:
    double lambda_ = 1.0;
};

// ---------------------------------------------------------------------------
// Standardization

struct StandardizeParams {
    double mean = 0.0;
    /// Population standard deviation; 1 for constant input.
    double std = 1.0;
};

StandardizeParams standardize_fit(std::span<const double> y);

class Standardizer final : public Transformer {
public:
    Standardizer() = default;

    std::unique_ptr<Transformer> clone() const override { return std::make_unique<Standardizer>(*this); }
    std::string name() const override { return "Standardizer"; }

    ParamMap get_params() const override { return {}; }
    void set_param(const std::string& key, const ParamValue&) override { unknown_param(key); }

    const StandardizeParams& params() const;

protected:
    void do_fit(const TimeSeries& y) override;
    std::vector<double> do_transform(std::span<const Index> positions, std::span<const double> values) const override;
    std::vector<double> do_inverse(std::span<const Index> positions, std::span<const double> values) const override;
    FittedParams do_fitted_params() const override { return {{"mean", params_.mean}, {"std", params_.std}}; }

private:
    StandardizeParams params_;
};

// ---------------------------------------------------------------------------
// Detrending

/// Forecaster-backed detrender: transform returns residuals of the wrapped
/// forecaster's in-sample or out-of-sample predictions at the given indices.
class Detrender final : public Transformer {
public:
    explicit Detrender(ForecasterPtr forecaster);
    Detrender(const Detrender& other);

    std::unique_ptr<Transformer> clone() const override { return std::make_unique<Detrender>(*this); }
    std::string name() const override { return "Detrender"; }

    ParamMap get_params() const override;
    void set_param(const std::string& key, const ParamValue& value) override;

    void update(const TimeSeries& y_new) override;

    const Forecaster& forecaster() const noexcept { return *forecaster_; }

protected:
    void do_fit(const TimeSeries& y) override;
    std::vector<double> do_transform(std::span<const Index> positions, std::span<const double> values) const override;
    std::vector<double> do_inverse(std::span<const Index> positions, std::span<const double> values) const override;
    FittedParams do_fitted_params() const override;

private:
    ForecasterPtr forecaster_;
};

} // namespace tsf
