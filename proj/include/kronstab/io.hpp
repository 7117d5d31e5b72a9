#pragma once

// JSON wire format for maps:
//
//   {"n":3,"m":3,"k":2,"field":{"kind":"Q"},"matrix":[[[c0,...,cn], ...], ...]}
//
// "field" is {"kind":"Q"} or {"kind":"Fp","p":P}. "matrix" has k rows of m+k
// linear forms, each a list of n+1 coefficients. A coefficient is an integer
// or a "p/q" string. The writer keeps this key order, writes lowest terms, and
// uses plain integers whenever the value is integral and fits in 64 bits.

#include <string>

#include <json.hpp>

#include "kronstab/model.hpp"

namespace kronstab {

/// Throws ParseError naming the offending path (e.g. "$.matrix[1][4][2]").
KroneckerMap from_json(const std::string& text);
KroneckerMap from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json to_json_value(const KroneckerMap& a);
std::string to_json(const KroneckerMap& a);

nlohmann::ordered_json rational_to_json(const Rational& q);
nlohmann::ordered_json field_to_json(const FieldSpec& f);

}  // namespace kronstab
