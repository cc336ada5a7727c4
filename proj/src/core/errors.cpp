#include "tsf/errors.hpp"

#include <fmt/format.h>

namespace tsf {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::NonFiniteForecast: return "NonFiniteForecast";
    case Errc::NotFitted: return "NotFitted";
    case Errc::UnsupportedInSample: return "UnsupportedInSample";
    case Errc::NonContiguousUpdate: return "NonContiguousUpdate";
    case Errc::UnknownParameter: return "UnknownParameter";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OptimizerFailed: return "OptimizerFailed";
    case Errc::NonPositiveValues: return "NonPositiveValues";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::Unimplemented: return "Unimplemented";
    case Errc::AllCandidatesFailed: return "AllCandidatesFailed";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::SeriesMismatch: return "SeriesMismatch";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::UnsupportedAlpha: return "UnsupportedAlpha";
    case Errc::AllZeroDifferences: return "AllZeroDifferences";
    case Errc::IncompleteGrid: return "IncompleteGrid";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::MissingTestSeries: return "MissingTestSeries";
    case Errc::UnknownModel: return "UnknownModel";
    case Errc::MissingReference: return "MissingReference";
    case Errc::Io: return "Io";
    }
    return "Unknown";
}

void series_too_short(std::string_view who, std::size_t needed, std::size_t got) {
    throw Error(Errc::SeriesTooShort, fmt::format("{} needs at least {} points, got {}", who, needed, got));
}

} // namespace tsf
