#include "tsf/params.hpp"
#include "tsf/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace tsf {

namespace {

[[noreturn]] void bad_type(const std::string& name, const char* expected) {
    throw Error(Errc::InvalidArgument, fmt::format("parameter '{}' expects {}", name, expected));
}

} // namespace

std::int64_t param_as_int(const ParamValue& v, const std::string& name) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    if (const auto* d = std::get_if<double>(&v)) {
        if (std::nearbyint(*d) == *d) return static_cast<std::int64_t>(*d);
    }
    bad_type(name, "an integer");
}

double param_as_double(const ParamValue& v, const std::string& name) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    bad_type(name, "a number");
}

bool param_as_bool(const ParamValue& v, const std::string& name) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    bad_type(name, "a boolean");
}

std::string param_as_string(const ParamValue& v, const std::string& name) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    bad_type(name, "a string");
}

std::string to_string(const ParamValue& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return x;
            else if constexpr (std::is_same_v<T, double>) return fmt::format("{:.17g}", x);
            else return fmt::format("{}", x);
        },
        v);
}

void merge_prefixed(ParamMap& out, const std::string& prefix, const ParamMap& inner) {
    for (const auto& [k, v] : inner) out[prefix + "." + k] = v;
}

void merge_prefixed(FittedParams& out, const std::string& prefix, const FittedParams& inner) {
    for (const auto& [k, v] : inner) out[prefix + "." + k] = v;
}

bool split_path(const std::string& path, std::string& head, std::string& tail) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) return false;
    head = path.substr(0, dot);
    tail = path.substr(dot + 1);
    return true;
}

} // namespace tsf
