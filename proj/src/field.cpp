#include "kronstab/field.hpp"

#include <cctype>

namespace kronstab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(negative ? Integer(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Zp& value) { return std::to_string(value.value()); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Zp Zp::inverse() const {
  if (v_ == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
  std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  x0 %= static_cast<std::int64_t>(p_);
  if (x0 < 0) x0 += p_;
  return Zp(static_cast<std::uint32_t>(x0), p_);
}

Zp PrimeField::from_int(long v) const {
  long r = v % static_cast<long>(p);
  if (r < 0) r += p;
  return Zp(static_cast<std::uint32_t>(r), p);
}

Zp PrimeField::from_rational(const Rational& q) const {
  Integer pz(static_cast<unsigned long>(p));
  Integer num = q.get_num() % pz;
  Integer den = q.get_den() % pz;
  if (num < 0) num += pz;
  if (den == 0) throw BadReduction();
  Zp n(static_cast<std::uint32_t>(num.get_ui()), p);
  Zp d(static_cast<std::uint32_t>(den.get_ui()), p);
  return n / d;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  return {Kind::prime, p};
}

std::string FieldSpec::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p); }

}  // namespace kronstab
