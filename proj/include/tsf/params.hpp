#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace tsf {

/// Hyper-parameter value. Integers and reals are kept apart so that
/// `window_length` round-trips as an integer.
using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

/// Flattened hyper-parameters. Nested components use dotted paths,
/// e.g. "forecast.regressor.k".
using ParamMap = std::map<std::string, ParamValue>;

/// Fitted parameters are always numeric.
using FittedParams = std::map<std::string, double>;

std::int64_t param_as_int(const ParamValue& v, const std::string& name);
double param_as_double(const ParamValue& v, const std::string& name);
bool param_as_bool(const ParamValue& v, const std::string& name);
std::string param_as_string(const ParamValue& v, const std::string& name);

std::string to_string(const ParamValue& v);

/// Prefixes every key of `inner` with "prefix." and merges into `out`.
void merge_prefixed(ParamMap& out, const std::string& prefix, const ParamMap& inner);
void merge_prefixed(FittedParams& out, const std::string& prefix, const FittedParams& inner);

/// Splits "a.b.c" into ("a", "b.c"); returns false when there is no dot.
bool split_path(const std::string& path, std::string& head, std::string& tail);

/// Implemented by every configurable component (forecasters, transformers,
/// regressors). Setting parameters resets fitted state.
class Parameterized {
public:
    virtual ~Parameterized() = default;
    virtual ParamMap get_params() const = 0;
    /// Sets a single (possibly nested) parameter. Throws UnknownParameter.
    virtual void set_param(const std::string& name, const ParamValue& value) = 0;

    void set_params(const ParamMap& params) {
        for (const auto& [k, v] : params) set_param(k, v);
    }
};

} // namespace tsf
