#pragma once

// Dense univariate polynomials over a field, coefficients low to high,
// always trimmed (the zero polynomial is the empty vector). These are the
// dehomogenized shadows of binary forms and only used behind BinaryForm.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "kronstab/field.hpp"

namespace kronstab::univariate {

template <class E>
using Poly = std::vector<E>;

template <class E>
void trim(Poly<E>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class E>
int degree(const Poly<E>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class F>
Poly<typename F::Element> mul(const F& f, const Poly<typename F::Element>& a, const Poly<typename F::Element>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<typename F::Element> c(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

template <class F>
Poly<typename F::Element> sub(const F& f, Poly<typename F::Element> a, const Poly<typename F::Element>& b) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder of a by nonzero b.
template <class F>
std::pair<Poly<typename F::Element>, Poly<typename F::Element>> divmod(const F& f, Poly<typename F::Element> a,
                                                                      const Poly<typename F::Element>& b) {
  using E = typename F::Element;
  Poly<E> q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, f.zero());
  const E inv = f.one() / b.back();
  const long last = static_cast<long>(b.size()) - 1;
  for (long i = static_cast<long>(a.size()) - 1; i >= last; --i) {
    if (is_zero(a[i])) continue;
    const E factor = a[i] * inv;
    const std::size_t shift = static_cast<std::size_t>(i - last);
    q[shift] = factor;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= factor * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

template <class F>
Poly<typename F::Element> monic(const F& f, Poly<typename F::Element> p) {
  if (p.empty()) return p;
  const typename F::Element inv = f.one() / p.back();
  for (auto& c : p) c *= inv;
  return p;
}

/// Euclidean gcd, monic. gcd(0, 0) = 0.
template <class F>
Poly<typename F::Element> gcd_euclid(const F& f, Poly<typename F::Element> a, Poly<typename F::Element> b) {
  while (!b.empty()) {
    auto r = divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, std::move(a));
}

/// gcd over Q through a primitive (content-stripped) pseudo-remainder sequence
/// on integer polynomials; the result is made monic over Q.
Poly<Rational> gcd_primitive_prs(const Poly<Rational>& a, const Poly<Rational>& b);

inline Poly<Rational> gcd(const RationalField&, const Poly<Rational>& a, const Poly<Rational>& b) {
  return gcd_primitive_prs(a, b);
}
inline Poly<Zp> gcd(const PrimeField& f, const Poly<Zp>& a, const Poly<Zp>& b) { return gcd_euclid(f, a, b); }

template <class F>
Poly<typename F::Element> derivative(const F& f, const Poly<typename F::Element>& p) {
  Poly<typename F::Element> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * f.from_int(static_cast<long>(i)));
  trim(d);
  return d;
}

template <class F>
typename F::Element evaluate(const F& f, const Poly<typename F::Element>& p, const typename F::Element& x) {
  typename F::Element acc = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Roots in the base field (without multiplicity) plus the part of the
/// squarefree kernel that has no roots there. `complete` is false when the
/// search could not be finished (rational case: coefficient too hard to factor).
template <class E>
struct RootSearch {
  std::vector<E> roots;
  Poly<E> residual;
  bool complete = true;
};

RootSearch<Rational> roots(const RationalField& f, const Poly<Rational>& p);
RootSearch<Zp> roots(const PrimeField& f, const Poly<Zp>& p);

}  // namespace kronstab::univariate
