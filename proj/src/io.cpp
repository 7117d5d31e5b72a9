#include "kronstab/io.hpp"

#include <limits>

namespace kronstab {

using nlohmann::ordered_json;

namespace {

const ordered_json& member(const ordered_json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, std::string("missing key '") + key + "'");
  return *it;
}

int small_int(const ordered_json& v, const std::string& path, int lo, int hi) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) throw ParseError(path, "value " + std::to_string(x) + " out of range");
  return static_cast<int>(x);
}

Rational parse_coefficient(const ordered_json& v, const std::string& path) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(Integer(std::to_string(v.get<unsigned long long>())));
    return Rational(Integer(std::to_string(v.get<long long>())));
  }
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "coefficient must be an integer or a \"p/q\" string");
}

FieldSpec parse_field(const ordered_json& v, const std::string& path) {
  if (!v.is_object()) throw ParseError(path, "expected an object");
  const auto& kind = member(v, path, "kind");
  if (!kind.is_string()) throw ParseError(path + ".kind", "expected a string");
  const auto name = kind.get<std::string>();
  if (name == "Q") return FieldSpec::rationals();
  if (name == "Fp") {
    const auto& p = member(v, path, "p");
    if (!p.is_number_unsigned() || p.get<unsigned long long>() >= (1ull << 31))
      throw ParseError(path + ".p", "expected a prime below 2^31");
    const auto value = static_cast<std::uint32_t>(p.get<unsigned long long>());
    if (!is_prime(value)) throw ParseError(path + ".p", std::to_string(value) + " is not prime");
    return FieldSpec::prime_field(value);
  }
  throw ParseError(path + ".kind", "unknown field kind '" + name + "'");
}

}  // namespace

KroneckerMap from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("$", std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

KroneckerMap from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("$", "expected an object");
  Dimensions d;
  d.n = small_int(member(doc, "$", "n"), "$.n", 0, 64);
  d.m = small_int(member(doc, "$", "m"), "$.m", 0, 1024);
  d.k = doc.contains("k") ? small_int(doc["k"], "$.k", 0, 64) : 2;
  try {
    d.validate();
  } catch (const PreconditionError& e) {
    throw ParseError("$", e.what());
  }
  const FieldSpec field = doc.contains("field") ? parse_field(doc["field"], "$.field") : FieldSpec::rationals();
  const auto& rows = member(doc, "$", "matrix");
  if (!rows.is_array()) throw ParseError("$.matrix", "expected an array");
  if (rows.size() != static_cast<std::size_t>(d.k))
    throw ParseError("$.matrix", "expected " + std::to_string(d.k) + " rows, found " + std::to_string(rows.size()));
  KroneckerMap a(d, field);
  for (int i = 0; i < d.k; ++i) {
    const std::string rpath = "$.matrix[" + std::to_string(i) + "]";
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d.width()))
      throw ParseError(rpath, "expected " + std::to_string(d.width()) + " linear forms");
    for (int w = 0; w < d.width(); ++w) {
      const std::string fpath = rpath + "[" + std::to_string(w) + "]";
      const auto& form = row[static_cast<std::size_t>(w)];
      if (!form.is_array() || form.size() != static_cast<std::size_t>(d.vars()))
        throw ParseError(fpath, "expected " + std::to_string(d.vars()) + " coefficients");
      for (int l = 0; l < d.vars(); ++l) {
        const std::string cpath = fpath + "[" + std::to_string(l) + "]";
        const Rational q = parse_coefficient(form[static_cast<std::size_t>(l)], cpath);
        if (!field.is_rational() && mpz_divisible_ui_p(q.get_den().get_mpz_t(), field.p))
          throw ParseError(cpath, "denominator divisible by " + std::to_string(field.p));
        a.set(i, w, l, q);
      }
    }
  }
  if (a.is_zero()) throw ParseError("$.matrix", "the map is identically zero");
  return a;
}

ordered_json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

ordered_json field_to_json(const FieldSpec& f) {
  ordered_json out;
  if (f.is_rational()) {
    out["kind"] = "Q";
  } else {
    out["kind"] = "Fp";
    out["p"] = f.p;
  }
  return out;
}

ordered_json to_json_value(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  ordered_json doc;
  doc["n"] = d.n;
  doc["m"] = d.m;
  doc["k"] = d.k;
  doc["field"] = field_to_json(a.field());
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < d.k; ++i) {
    ordered_json row = ordered_json::array();
    for (int w = 0; w < d.width(); ++w) {
      ordered_json form = ordered_json::array();
      for (int l = 0; l < d.vars(); ++l) form.push_back(rational_to_json(a.coeff(i, w, l)));
      row.push_back(std::move(form));
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc;
}

std::string to_json(const KroneckerMap& a) { return to_json_value(a).dump(); }

}  // namespace kronstab
