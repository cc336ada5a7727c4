#include "tsf/eval.hpp"
#include "tsf/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

namespace tsf {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b, const char* who) {
    if (a.size() != b.size()) throw Error(Errc::LengthMismatch, fmt::format("{}: lengths {} and {} differ", who, a.size(), b.size()));
    if (a.empty()) throw Error(Errc::LengthMismatch, fmt::format("{}: empty input", who));
}

} // namespace

double smape(std::span<const double> y_true, std::span<const double> y_pred) {
    check_lengths(y_true, y_pred, "smape");
    double sum = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double den = std::abs(y_true[i]) + std::abs(y_pred[i]);
        if (den > 0.0) sum += std::abs(y_true[i] - y_pred[i]) / den;
    }
    return 200.0 * sum / static_cast<double>(y_true.size());
}

MaseDenominator parse_mase_denominator(const std::string& s) {
    if (s == "as_formula") return MaseDenominator::AsFormula;
    if (s == "train_only") return MaseDenominator::TrainOnly;
    throw Error(Errc::InvalidArgument, "unknown MASE denominator '" + s + "'");
}

std::string to_string(MaseDenominator d) { return d == MaseDenominator::AsFormula ? "as_formula" : "train_only"; }

double mase(std::span<const double> y_true, std::span<const double> y_pred, std::span<const double> y_train, int m,
            MaseDenominator denominator) {
    check_lengths(y_true, y_pred, "mase");
    if (m < 1) throw Error(Errc::InvalidArgument, "mase: seasonal period must be positive");

    std::vector<double> base(y_train.begin(), y_train.end());
    if (denominator == MaseDenominator::AsFormula) base.insert(base.end(), y_true.begin(), y_true.end());
    const auto lag = static_cast<std::size_t>(m);
    if (base.size() <= lag) series_too_short("mase", lag + 1, base.size());

    double scale = 0.0;
    for (std::size_t j = lag; j < base.size(); ++j) scale += std::abs(base[j] - base[j - lag]);
    scale /= static_cast<double>(base.size() - lag);
    if (scale == 0.0) throw Error(Errc::ZeroDenominator, "mase: seasonal naive in-sample error is zero");

    double num = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) num += std::abs(y_true[i] - y_pred[i]);
    num /= static_cast<double>(y_true.size());
    return num / scale;
}

double owa(double smape_mean, double mase_mean, double naive2_smape_mean, double naive2_mase_mean) {
    return 0.5 * (smape_mean / naive2_smape_mean + mase_mean / naive2_mase_mean);
}

double owa(const std::vector<EvalRecord>& records, const std::vector<EvalRecord>& naive2_records) {
    if (records.empty()) throw Error(Errc::SeriesMismatch, "owa: no records");
    std::map<std::string, const EvalRecord*> reference;
    for (const auto& r : naive2_records) reference[r.series_id] = &r;
    if (reference.size() != records.size()) {
        throw Error(Errc::SeriesMismatch, fmt::format("owa: {} records against {} reference series", records.size(), reference.size()));
    }
    double s = 0.0, m = 0.0, s2 = 0.0, m2 = 0.0;
    for (const auto& r : records) {
        const auto it = reference.find(r.series_id);
        if (it == reference.end()) throw Error(Errc::SeriesMismatch, "owa: no reference for series " + r.series_id);
        s += r.smape;
        m += r.mase;
        s2 += it->second->smape;
        m2 += it->second->mase;
    }
    // Equal counts, so the ratios of sums equal the ratios of means.
    return owa(s, m, s2, m2);
}

} // namespace tsf
