#pragma once

#include "tsf/params.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tsf {

/// Tabular regressor seam. Fitted regressors are read-only during predict
/// and can be shared across threads.
class Regressor : public Parameterized {
public:
    ~Regressor() override = default;

    virtual std::unique_ptr<Regressor> clone() const = 0;
    virtual std::string name() const = 0;

    /// X is n x p, y has n entries.
    virtual void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) = 0;
    virtual double predict(std::span<const double> x) const = 0;
    virtual bool is_fitted() const noexcept = 0;
};

using RegressorPtr = std::unique_ptr<Regressor>;

/// Ordinary least squares. Uses the minimum-norm solution, so rank-deficient
/// designs still give finite, deterministic coefficients.
class LinearRegression final : public Regressor {
public:
    explicit LinearRegression(bool fit_intercept = true) : fit_intercept_(fit_intercept) {}

    std::unique_ptr<Regressor> clone() const override { return std::make_unique<LinearRegression>(*this); }
    std::string name() const override { return "LinearRegression"; }

    ParamMap get_params() const override { return {{"fit_intercept", fit_intercept_}}; }
    void set_param(const std::string& name, const ParamValue& value) override;

    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) override;
    double predict(std::span<const double> x) const override;
    bool is_fitted() const noexcept override { return fitted_; }

    const Eigen::VectorXd& coefficients() const { return coef_; }
    double intercept() const noexcept { return intercept_; }

private:
    bool fit_intercept_;
    bool fitted_ = false;
    Eigen::VectorXd coef_;
    double intercept_ = 0.0;
};

/// k-nearest-neighbours regression with Euclidean distance. Prediction is
/// the mean target of the k closest rows; equal distances favour the lower
/// row index.
class KNeighborsRegressor final : public Regressor {
public:
    explicit KNeighborsRegressor(int k = 1);

    std::unique_ptr<Regressor> clone() const override { return std::make_unique<KNeighborsRegressor>(*this); }
    std::string name() const override { return "KNeighborsRegressor"; }

    ParamMap get_params() const override { return {{"k", static_cast<std::int64_t>(k_)}}; }
    void set_param(const std::string& name, const ParamValue& value) override;

    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) override;
    double predict(std::span<const double> x) const override;
    bool is_fitted() const noexcept override { return X_.rows() > 0; }

private:
    int k_;
    Eigen::MatrixXd X_;
    Eigen::VectorXd y_;
};

} // namespace tsf
