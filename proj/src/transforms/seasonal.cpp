#include "tsf/transforms.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace tsf {

double autocorrelation(std::span<const double> y, std::size_t lag) {
    const std::size_t n = y.size();
    if (n == 0 || lag >= n) return 0.0;
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double den = 0.0;
    for (const double v : y) den += (v - mean) * (v - mean);
    if (den == 0.0) return 0.0;
    double num = 0.0;
    for (std::size_t t = lag; t < n; ++t) num += (y[t] - mean) * (y[t - lag] - mean);
    return num / den;
}

bool seasonality_test(std::span<const double> y, int sp, const SeasonalityTestConfig& config) {
    if (sp <= 1) return false;
    const auto period = static_cast<std::size_t>(sp);
    if (y.size() < static_cast<std::size_t>(config.min_cycles) * period) return false;

    double sum = 0.0;
    for (std::size_t i = 1; i < period; ++i) {
        const double r = autocorrelation(y, i);
        const bool squared = !(config.variant == SeasonalityTestVariant::M4Python && i == 1);
        sum += squared ? r * r : r;
    }
    const double limit = config.z * std::sqrt((1.0 + 2.0 * sum) / static_cast<double>(y.size()));
    // NaN limit (negative radicand in the M4Python variant) compares false.
    return std::abs(autocorrelation(y, period)) > limit;
}

std::vector<double> classical_decompose(std::span<const double> y, int sp) {
    if (sp < 1) throw Error(Errc::InvalidArgument, "sp must be positive");
    const auto period = static_cast<std::size_t>(sp);
    if (y.size() < 2 * period) series_too_short("classical_decompose", 2 * period, y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) {
            throw Error(Errc::NonPositiveValues, fmt::format("multiplicative decomposition needs positive values (offset {})", i));
        }
    }
    if (period == 1) return {1.0};

    // Centred moving average; weights (0.5, 1, ..., 1, 0.5) / sp for even sp.
    const std::size_t n = y.size();
    const std::size_t half = period / 2;
    std::vector<double> ratio_sum(period, 0.0);
    std::vector<std::size_t> ratio_count(period, 0);
    for (std::size_t t = half; t + half < n; ++t) {
        double trend = 0.0;
        if (period % 2 == 1) {
            for (std::size_t j = t - half; j <= t + half; ++j) trend += y[j];
        } else {
            trend = 0.5 * y[t - half] + 0.5 * y[t + half];
            for (std::size_t j = t - half + 1; j < t + half; ++j) trend += y[j];
        }
        trend /= static_cast<double>(period);
        ratio_sum[t % period] += y[t] / trend;
        ++ratio_count[t % period];
    }

    std::vector<double> indices(period);
    for (std::size_t i = 0; i < period; ++i) indices[i] = ratio_sum[i] / static_cast<double>(ratio_count[i]);
    const double mean = std::accumulate(indices.begin(), indices.end(), 0.0) / static_cast<double>(period);
    for (double& v : indices) v /= mean;
    return indices;
}

double SeasonalIndices::at(Index t) const {
    if (!applied) return 1.0;
    const Index p = static_cast<Index>(sp);
    return indices[static_cast<std::size_t>(((t - phase) % p + p) % p)];
}

SeasonalIndices deseasonalize_fit(const TimeSeries& y, int sp, const SeasonalityTestConfig& config) {
    SeasonalIndices out;
    out.sp = sp;
    out.phase = y.start();
    if (!seasonality_test(y.view(), sp, config)) return out;
    out.indices = classical_decompose(y.view(), sp);
    out.applied = true;
    return out;
}

// ---------------------------------------------------------------------------

Deseasonalizer::Deseasonalizer(int sp, SeasonalityTestConfig config) : sp_(sp), config_(config) {
    if (sp < 1) throw Error(Errc::InvalidArgument, "sp must be positive");
}

ParamMap Deseasonalizer::get_params() const {
    return {{"sp", static_cast<std::int64_t>(sp_)},
            {"z", config_.z},
            {"min_cycles", static_cast<std::int64_t>(config_.min_cycles)},
            {"test", std::string(config_.variant == SeasonalityTestVariant::Standard ? "standard" : "m4_python")}};
}

void Deseasonalizer::set_param(const std::string& key, const ParamValue& value) {
    if (key == "sp") {
        const auto sp = param_as_int(value, key);
        if (sp < 1) throw Error(Errc::InvalidArgument, "sp must be positive");
        sp_ = static_cast<int>(sp);
    } else if (key == "z") {
        config_.z = param_as_double(value, key);
    } else if (key == "min_cycles") {
        config_.min_cycles = static_cast<int>(param_as_int(value, key));
    } else if (key == "test") {
        const auto s = param_as_string(value, key);
        if (s == "standard") config_.variant = SeasonalityTestVariant::Standard;
        else if (s == "m4_python") config_.variant = SeasonalityTestVariant::M4Python;
        else throw Error(Errc::InvalidArgument, "unknown seasonality test '" + s + "'");
    } else {
        unknown_param(key);
    }
    reset();
}

const SeasonalIndices& Deseasonalizer::seasonal() const {
    require_fitted();
    return seasonal_;
}

void Deseasonalizer::do_fit(const TimeSeries& y) { seasonal_ = deseasonalize_fit(y, sp_, config_); }

std::vector<double> Deseasonalizer::do_transform(std::span<const Index> positions, std::span<const double> values) const {
    std::vector<double> out(values.begin(), values.end());
    if (!seasonal_.applied) return out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] /= seasonal_.at(positions[i]);
    return out;
}

std::vector<double> Deseasonalizer::do_inverse(std::span<const Index> positions, std::span<const double> values) const {
    std::vector<double> out(values.begin(), values.end());
    if (!seasonal_.applied) return out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= seasonal_.at(positions[i]);
    return out;
}

FittedParams Deseasonalizer::do_fitted_params() const {
    FittedParams out{{"applied", seasonal_.applied ? 1.0 : 0.0}, {"phase", static_cast<double>(seasonal_.phase)}};
    for (std::size_t i = 0; i < seasonal_.indices.size(); ++i) out[fmt::format("index_{}", i)] = seasonal_.indices[i];
    return out;
}

} // namespace tsf
