#pragma once

// Exact scalar types and field descriptors.
//
// Two element types are supported: arbitrary-precision rationals (GMP) and
// residues modulo a prime p < 2^31. Algorithms are written once as templates
// over a field object (RationalField or PrimeField); a runtime FieldSpec
// selects the instantiation through with_field().

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "kronstab/error.hpp"

namespace kronstab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (decimal, q != 0) into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

bool is_prime(std::uint64_t n);

/// Residue class modulo a prime. The modulus travels with the value so the
/// arithmetic operators need no external context.
class Zp {
 public:
  Zp() = default;
  Zp(std::uint32_t value, std::uint32_t modulus) : v_(value % modulus), p_(modulus) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  Zp inverse() const;

  friend Zp operator+(Zp a, Zp b) {
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Zp::raw(s, a.p_);
  }
  friend Zp operator-(Zp a, Zp b) {
    return Zp::raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Zp operator*(Zp a, Zp b) {
    return Zp::raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_), a.p_);
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp operator-() const { return Zp::raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Zp& operator+=(Zp o) { return *this = *this + o; }
  Zp& operator-=(Zp o) { return *this = *this - o; }
  Zp& operator*=(Zp o) { return *this = *this * o; }
  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }

 private:
  static Zp raw(std::uint32_t v, std::uint32_t p) {
    Zp z;
    z.v_ = v;
    z.p_ = p;
    return z;
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 1;
};

inline bool is_zero(const Zp& x) { return x.value() == 0; }
std::string to_string(const Zp& value);

struct RationalField {
  using Element = Rational;
  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element from_int(long v) const { return Rational(v); }
  Element from_rational(const Rational& q) const { return q; }
  Rational to_rational(const Element& x) const { return x; }
  std::string name() const { return "Q"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

struct PrimeField {
  std::uint32_t p = 10007;

  using Element = Zp;
  Element zero() const { return Zp(0, p); }
  Element one() const { return Zp(1, p); }
  Element from_int(long v) const;
  /// Reduces a rational mod p; throws BadReduction when p divides the denominator.
  Element from_rational(const Rational& q) const;
  /// Canonical representative in [0, p).
  Rational to_rational(const Element& x) const { return Rational(static_cast<unsigned long>(x.value())); }
  std::string name() const { return "F_" + std::to_string(p); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

inline constexpr std::uint32_t kDefaultPrime = 10007;

/// Runtime field descriptor carried by data that crosses the JSON boundary.
struct FieldSpec {
  enum class Kind { rational, prime };
  Kind kind = Kind::rational;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime_field(std::uint32_t p);
  bool is_rational() const { return kind == Kind::rational; }
  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_rational()) return fn(RationalField{});
  return fn(PrimeField{spec.p});
}

}  // namespace kronstab
