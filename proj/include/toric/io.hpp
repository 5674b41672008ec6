#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/rational.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace toric::io {

using Json = nlohmann::ordered_json;

/// Thrown for documents that are not well-formed fan or divisor files.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// {"dim": n, "rays": [[...], ...], "cones": [[i, j, ...], ...]}
inline RawFan parse_fan(const Json& doc) {
    try {
        RawFan raw;
        raw.dim = doc.at("dim").get<int>();
        raw.rays = doc.at("rays").get<std::vector<IntVector>>();
        raw.cones = doc.at("cones").get<std::vector<std::vector<std::size_t>>>();
        return raw;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed fan document: ") + e.what());
    }
}

inline Rational parse_coefficient(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw FormatError("divisor coefficients must be integers or \"p/q\" strings");
}

/// {"coeffs": ["p/q", ...]}; a bare array is accepted too.
inline Divisor parse_divisor(const Json& doc) {
    if (!doc.is_array() && !(doc.is_object() && doc.contains("coeffs")))
        throw FormatError("divisor document needs \"coeffs\"");
    const Json& arr = doc.is_array() ? doc : doc.at("coeffs");
    if (!arr.is_array()) throw FormatError("\"coeffs\" must be an array");
    Divisor d;
    try {
        for (const auto& v : arr) d.coeffs.push_back(parse_coefficient(v));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return d;
}

inline Json rational_json(const Rational& q) { return to_string(q); }

/// {"exact": [...], "decimal": [...]}
template <class Range>
Json vector_json(const Range& values) {
    Json exact = Json::array(), decimal = Json::array();
    for (const auto& v : values) {
        Rational q(v);
        exact.push_back(to_string(q));
        decimal.push_back(to_decimal(q));
    }
    return Json{{"exact", exact}, {"decimal", decimal}};
}

inline Json scalar_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"decimal", to_decimal(q)}}; }

inline Json mask_json(RayMask m) {
    Json out = Json::array();
    for (auto i : indices_of(m)) out.push_back(i);
    return out;
}

inline Json fan_json(const Fan& fan) {
    Json cones = Json::array();
    for (auto c : fan.max_cones()) cones.push_back(mask_json(c));
    return Json{{"dim", fan.dim()}, {"rays", fan.rays()}, {"cones", cones}};
}

inline Json diagnostics_json(const std::vector<Diagnostic>& diags) {
    Json out = Json::array();
    for (const auto& d : diags)
        out.push_back(Json{{"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
                           {"message", d.message}});
    return out;
}

}  // namespace toric::io

#endif
