#include "tsf/transforms.hpp"
#include "tsf/optim.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace tsf {

namespace {

void require_positive(std::span<const double> y, const char* who) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw Error(Errc::NonPositiveValues, fmt::format("{}: value at offset {} is not positive", who, i));
    }
}

constexpr int kGridPoints = 101;

} // namespace

double boxcox(double y, double lambda) { return std::expm1(lambda * std::log(y)) / lambda; }

double inv_boxcox(double x, double lambda) {
    const double base = lambda * x;
    if (base <= -1.0) return 0.0;
    return std::exp(std::log1p(base) / lambda);
}

double boxcox_loglik(std::span<const double> y, double lambda) {
    const auto n = static_cast<double>(y.size());
    double log_sum = 0.0, mean = 0.0;
    std::vector<double> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        log_sum += std::log(y[i]);
        x[i] = boxcox(y[i], lambda);
        mean += x[i];
    }
    mean /= n;
    double var = 0.0;
    for (const double v : x) var += (v - mean) * (v - mean);
    var /= n;
    if (var <= 0.0) return -std::numeric_limits<double>::infinity();
    return (lambda - 1.0) * log_sum - 0.5 * n * std::log(var);
}

double boxcox_fit(std::span<const double> y) {
    if (y.empty()) series_too_short("BoxCox", 1, 0);
    require_positive(y, "BoxCox");

    // Coarse grid, then golden-section refinement between the neighbours of
    // the best grid point.
    const double step = (kBoxCoxUpper - kBoxCoxLower) / (kGridPoints - 1);
    int best_k = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kGridPoints; ++k) {
        const double ll = boxcox_loglik(y, kBoxCoxLower + step * k);
        if (ll > best) {
            best = ll;
            best_k = k;
        }
    }
    // Constant input: every lambda is equally (un)likely.
    if (best_k < 0) return kBoxCoxUpper;

    const double a = kBoxCoxLower + step * std::max(0, best_k - 1);
    const double b = kBoxCoxLower + step * std::min(kGridPoints - 1, best_k + 1);
    const double refined = optim::golden_section_min([&](double l) { return -boxcox_loglik(y, l); }, a, b, 1e-10);
    return boxcox_loglik(y, refined) >= best ? refined : kBoxCoxLower + step * best_k;
}

double BoxCoxTransformer::lambda() const {
    require_fitted();
    return lambda_;
}

void BoxCoxTransformer::do_fit(const TimeSeries& y) { lambda_ = boxcox_fit(y.view()); }

std::vector<double> BoxCoxTransformer::do_transform(std::span<const Index>, std::span<const double> values) const {
    require_positive(values, "BoxCox");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = boxcox(values[i], lambda_);
    return out;
}

std::vector<double> BoxCoxTransformer::do_inverse(std::span<const Index>, std::span<const double> values) const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = inv_boxcox(values[i], lambda_);
    return out;
}

} // namespace tsf
