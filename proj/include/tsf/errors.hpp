#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsf {

enum class Errc {
    SeriesTooShort,
    NonFiniteInput,
    NonFiniteForecast,
    NotFitted,
    UnsupportedInSample,
    NonContiguousUpdate,
    UnknownParameter,
    InvalidArgument,
    OptimizerFailed,
    NonPositiveValues,
    DimensionMismatch,
    KTooLarge,
    Unimplemented,
    AllCandidatesFailed,
    LengthMismatch,
    ZeroDenominator,
    SeriesMismatch,
    ZeroVariance,
    DegenerateInput,
    UnsupportedAlpha,
    AllZeroDifferences,
    IncompleteGrid,
    MalformedRow,
    MissingTestSeries,
    UnknownModel,
    MissingReference,
    Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void series_too_short(std::string_view who, std::size_t needed, std::size_t got);

} // namespace tsf
