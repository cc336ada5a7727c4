#include "tsf/transforms.hpp"

#include <fmt/format.h>

namespace tsf {

void Transformer::fit(const TimeSeries& y) {
    reset();
    if (y.empty()) series_too_short(name(), 1, 0);
    require_finite(y.view(), name());
    do_fit(y);
    fitted_ = true;
}

std::vector<double> Transformer::transform(std::span<const Index> positions, std::span<const double> values) const {
    require_fitted();
    if (positions.size() != values.size()) throw Error(Errc::LengthMismatch, name() + ": positions and values differ in length");
    return do_transform(positions, values);
}

std::vector<double> Transformer::inverse_transform(std::span<const Index> positions,
                                                   std::span<const double> values) const {
    require_fitted();
    if (positions.size() != values.size()) throw Error(Errc::LengthMismatch, name() + ": positions and values differ in length");
    return do_inverse(positions, values);
}

TimeSeries Transformer::transform(const TimeSeries& y) const {
    const auto pos = y.positions();
    return TimeSeries(transform(pos, y.view()), y.start(), y.sp());
}

TimeSeries Transformer::inverse_transform(const TimeSeries& y) const {
    const auto pos = y.positions();
    return TimeSeries(inverse_transform(pos, y.view()), y.start(), y.sp());
}

FittedParams Transformer::get_fitted_params() const {
    require_fitted();
    return do_fitted_params();
}

void Transformer::require_fitted() const {
    if (!fitted_) throw Error(Errc::NotFitted, name() + " is not fitted");
}

void Transformer::unknown_param(const std::string& key) const {
    throw Error(Errc::UnknownParameter, fmt::format("{} has no parameter '{}'", name(), key));
}

} // namespace tsf
