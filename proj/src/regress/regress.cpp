#include "tsf/regress.hpp"
#include "tsf/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace tsf {

namespace {

void check_shapes(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::string& who) {
    if (X.rows() != y.size()) {
        throw Error(Errc::DimensionMismatch, fmt::format("{}: {} rows but {} targets", who, X.rows(), y.size()));
    }
    if (X.rows() == 0) throw Error(Errc::SeriesTooShort, who + ": no training rows");
}

} // namespace

void LinearRegression::set_param(const std::string& name, const ParamValue& value) {
    if (name != "fit_intercept") throw Error(Errc::UnknownParameter, "LinearRegression has no parameter '" + name + "'");
    fit_intercept_ = param_as_bool(value, name);
    fitted_ = false;
}

void LinearRegression::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    check_shapes(X, y, name());
    if (fit_intercept_) {
        // Centring removes the intercept column; the min-norm solution on the
        // centred design matches scikit-learn's handling of collinear inputs.
        const Eigen::RowVectorXd x_mean = X.colwise().mean();
        const double y_mean = y.mean();
        const Eigen::MatrixXd Xc = X.rowwise() - x_mean;
        const Eigen::VectorXd yc = y.array() - y_mean;
        coef_ = Xc.completeOrthogonalDecomposition().solve(yc);
        intercept_ = y_mean - x_mean.dot(coef_);
    } else {
        coef_ = X.completeOrthogonalDecomposition().solve(y);
        intercept_ = 0.0;
    }
    fitted_ = true;
}

double LinearRegression::predict(std::span<const double> x) const {
    if (!fitted_) throw Error(Errc::NotFitted, "LinearRegression is not fitted");
    if (static_cast<Eigen::Index>(x.size()) != coef_.size()) {
        throw Error(Errc::DimensionMismatch, fmt::format("LinearRegression: expected {} features, got {}", coef_.size(), x.size()));
    }
    double out = intercept_;
    for (std::size_t j = 0; j < x.size(); ++j) out += coef_[static_cast<Eigen::Index>(j)] * x[j];
    return out;
}

KNeighborsRegressor::KNeighborsRegressor(int k) : k_(k) {
    if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
}

void KNeighborsRegressor::set_param(const std::string& name, const ParamValue& value) {
    if (name != "k") throw Error(Errc::UnknownParameter, "KNeighborsRegressor has no parameter '" + name + "'");
    const auto k = param_as_int(value, name);
    if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
    k_ = static_cast<int>(k);
    X_.resize(0, 0);
    y_.resize(0);
}

void KNeighborsRegressor::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    check_shapes(X, y, name());
    if (k_ > X.rows()) throw Error(Errc::KTooLarge, fmt::format("k = {} exceeds {} training rows", k_, X.rows()));
    X_ = X;
    y_ = y;
}

double KNeighborsRegressor::predict(std::span<const double> x) const {
    if (!is_fitted()) throw Error(Errc::NotFitted, "KNeighborsRegressor is not fitted");
    if (static_cast<Eigen::Index>(x.size()) != X_.cols()) {
        throw Error(Errc::DimensionMismatch, fmt::format("KNeighborsRegressor: expected {} features, got {}", X_.cols(), x.size()));
    }
    const auto n = static_cast<std::size_t>(X_.rows());
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double diff = X_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - x[j];
            d += diff * diff;
        }
        dist[i] = d;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto k = static_cast<std::size_t>(k_);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += y_[static_cast<Eigen::Index>(order[i])];
    return sum / static_cast<double>(k);
}

} // namespace tsf
