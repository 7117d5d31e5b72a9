#include "kronstab/univariate.hpp"

#include <cstdint>

namespace kronstab::univariate {

namespace {

using IPoly = std::vector<Integer>;

void trim_int(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Integer primitive part of a rational polynomial (positive leading coefficient).
IPoly primitive_part(const Poly<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  IPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c.get_num() * (l / c.get_den()));
  Integer g = 0;
  for (const auto& c : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0) {
    if (out.back() < 0) g = -g;
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

IPoly primitive(IPoly p) {
  trim_int(p);
  if (p.empty()) return p;
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (p.back() < 0) g = -g;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
IPoly pseudo_remainder(IPoly a, const IPoly& b) {
  const Integer& lb = b.back();
  while (a.size() >= b.size()) {
    const Integer la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
    a.pop_back();
    trim_int(a);
  }
  return a;
}

Poly<Rational> to_monic_rational(const IPoly& p) {
  Poly<Rational> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c, p.back());
  for (auto& c : out) c.canonicalize();
  return out;
}

// Prime factors of |n| by trial division; `complete` turns false if a
// composite cofactor above the trial bound survives.
std::vector<Integer> prime_factors(Integer n, bool& complete) {
  std::vector<Integer> out;
  n = abs(n);
  for (unsigned long d = 2; d <= 100000 && Integer(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      out.emplace_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0 && n > Integer(100000) * 100000) complete = false;
    out.push_back(n);
  }
  return out;
}

std::vector<Integer> divisors(const Integer& n, bool& complete) {
  std::vector<Integer> divs{1};
  Integer rest = abs(n);
  for (const auto& q : prime_factors(n, complete)) {
    const std::size_t base = divs.size();
    Integer power = 1;
    while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
      power *= q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
      if (divs.size() > 20000) {
        complete = false;
        return divs;
      }
    }
  }
  return divs;
}

template <class F>
Poly<typename F::Element> squarefree_part(const F& f, const Poly<typename F::Element>& p) {
  auto d = derivative(f, p);
  if (d.empty()) return monic(f, p);
  auto g = gcd(f, p, d);
  return monic(f, divmod(f, p, g).first);
}

Poly<Zp> mulmod(const PrimeField& f, const Poly<Zp>& a, const Poly<Zp>& b, const Poly<Zp>& m) {
  return divmod(f, mul(f, a, b), m).second;
}

Poly<Zp> powmod(const PrimeField& f, Poly<Zp> base, std::uint64_t e, const Poly<Zp>& m) {
  Poly<Zp> acc{f.one()};
  acc = divmod(f, acc, m).second;
  base = divmod(f, base, m).second;
  while (e) {
    if (e & 1) acc = mulmod(f, acc, base, m);
    base = mulmod(f, base, base, m);
    e >>= 1;
  }
  return acc;
}

// Splits a product of distinct linear factors into its roots (Cantor-Zassenhaus).
void split_linear(const PrimeField& f, const Poly<Zp>& h, std::vector<Zp>& out, std::uint32_t& shift) {
  if (h.size() <= 1) return;
  if (h.size() == 2) {
    out.push_back(-h[0] / h[1]);
    return;
  }
  while (true) {
    Poly<Zp> base{f.from_int(shift++), f.one()};
    auto t = powmod(f, base, (f.p - 1) / 2, h);
    t = sub(f, t, Poly<Zp>{f.one()});
    auto g = gcd(f, h, t);
    if (g.size() > 1 && g.size() < h.size()) {
      split_linear(f, g, out, shift);
      split_linear(f, divmod(f, h, g).first, out, shift);
      return;
    }
  }
}

}  // namespace

Poly<Rational> gcd_primitive_prs(const Poly<Rational>& a, const Poly<Rational>& b) {
  if (a.empty() && b.empty()) return {};
  if (a.empty()) return to_monic_rational(primitive_part(b));
  if (b.empty()) return to_monic_rational(primitive_part(a));
  IPoly x = primitive_part(a);
  IPoly y = primitive_part(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    IPoly r = primitive(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return to_monic_rational(x);
}

RootSearch<Rational> roots(const RationalField& f, const Poly<Rational>& p) {
  RootSearch<Rational> out;
  if (p.size() <= 1) {
    out.residual = monic(f, p);
    return out;
  }
  Poly<Rational> rest = squarefree_part(f, p);
  if (is_zero(rest.front())) {
    out.roots.emplace_back(0);
    rest.erase(rest.begin());
  }
  while (rest.size() > 1) {
    IPoly ip = primitive_part(rest);
    bool complete = true;
    auto us = divisors(ip.front(), complete);
    auto vs = divisors(ip.back(), complete);
    if (!complete) out.complete = false;
    bool found = false;
    for (const auto& v : vs) {
      for (const auto& u : us) {
        for (int sign : {1, -1}) {
          Rational cand(sign * u, v);
          cand.canonicalize();
          if (cand.get_den() != v) continue;
          if (!is_zero(evaluate(f, rest, cand))) continue;
          out.roots.push_back(cand);
          rest = divmod(f, rest, Poly<Rational>{-cand, Rational(1)}).first;
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  out.residual = monic(f, rest);
  return out;
}

RootSearch<Zp> roots(const PrimeField& f, const Poly<Zp>& p) {
  RootSearch<Zp> out;
  if (p.size() <= 1) {
    out.residual = monic(f, p);
    return out;
  }
  Poly<Zp> linear;
  if (f.p <= 4096) {
    for (std::uint32_t x = 0; x < f.p; ++x)
      if (is_zero(evaluate(f, p, Zp(x, f.p)))) out.roots.emplace_back(x, f.p);
    linear = {f.one()};
    for (const auto& r : out.roots) linear = mul(f, linear, Poly<Zp>{-r, f.one()});
  } else {
    Poly<Zp> x{f.zero(), f.one()};
    auto xp = powmod(f, x, f.p, p);
    linear = gcd(f, p, sub(f, xp, x));
    std::uint32_t shift = 0;
    split_linear(f, linear, out.roots, shift);
  }
  out.residual = divmod(f, squarefree_part(f, p), linear).first;
  return out;
}

}  // namespace kronstab::univariate
