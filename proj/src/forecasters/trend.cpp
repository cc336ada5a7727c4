#include "tsf/forecasters.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

namespace tsf {

std::vector<double> polynomial_trend(std::span<const double> y, int degree) {
    if (degree < 0) throw Error(Errc::InvalidArgument, "degree must be non-negative");
    const auto cols = static_cast<Eigen::Index>(degree) + 1;
    if (static_cast<Eigen::Index>(y.size()) < cols) series_too_short("PolynomialTrend", static_cast<std::size_t>(cols), y.size());

    const auto n = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd design(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            design(i, j) = p;
            p *= static_cast<double>(i);
        }
    }
    const Eigen::Map<const Eigen::VectorXd> target(y.data(), n);
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
    return {coef.data(), coef.data() + coef.size()};
}

PolynomialTrendForecaster::PolynomialTrendForecaster(int degree) : degree_(degree) {
    if (degree < 0) throw Error(Errc::InvalidArgument, "degree must be non-negative");
}

ParamMap PolynomialTrendForecaster::get_params() const {
    return {{"degree", static_cast<std::int64_t>(degree_)}};
}

void PolynomialTrendForecaster::set_param(const std::string& key, const ParamValue& value) {
    if (key != "degree") unknown_param(key);
    const auto d = param_as_int(value, key);
    if (d < 0) throw Error(Errc::InvalidArgument, "degree must be non-negative");
    degree_ = static_cast<int>(d);
    reset();
}

const std::vector<double>& PolynomialTrendForecaster::coefficients() const {
    require_fitted();
    return coef_;
}

void PolynomialTrendForecaster::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>&) {
    coef_ = polynomial_trend(y.view(), degree_);
    origin_ = y.start();
}

std::vector<double> PolynomialTrendForecaster::do_predict(std::span<const Index> positions) const {
    std::vector<double> out;
    out.reserve(positions.size());
    for (const Index t : positions) {
        const double x = static_cast<double>(t - origin_);
        // Horner
        double v = 0.0;
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) v = v * x + *it;
        out.push_back(v);
    }
    return out;
}

FittedParams PolynomialTrendForecaster::do_fitted_params() const {
    FittedParams out;
    for (std::size_t i = 0; i < coef_.size(); ++i) out[fmt::format("coef_{}", i)] = coef_[i];
    return out;
}

} // namespace tsf
