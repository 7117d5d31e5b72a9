#pragma once

// Homogeneous forms in two variables (a, b), the coordinates of P(I) for k = 2.
//
// coeffs()[i] is the coefficient of a^i b^(d-i). The zero form is stored as an
// empty coefficient vector and reports degree() == -1; every other form keeps
// all d+1 coefficients, so b^d = {1, 0, ..., 0} still has degree d.

#include <cassert>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kronstab/combinatorics.hpp"
#include "kronstab/error.hpp"
#include "kronstab/univariate.hpp"

namespace kronstab {

template <class F>
class BinaryForm {
 public:
  using Element = typename F::Element;

  BinaryForm() = default;
  explicit BinaryForm(F field) : field_(field) {}
  BinaryForm(F field, std::vector<Element> coeffs) : field_(field), c_(std::move(coeffs)) { normalize(); }

  static BinaryForm constant(F field, const Element& value) { return BinaryForm(field, {value}); }
  /// b*u - a*v, the shape of every pencil entry.
  static BinaryForm linear(F field, const Element& u, const Element& v) { return BinaryForm(field, {u, -v}); }

  const F& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Element>& coeffs() const { return c_; }

  Element evaluate(const Element& a, const Element& b) const {
    Element acc = field_.zero();
    Element bpow = field_.one();
    // Horner in a, carrying the power of b separately.
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * a + c_[i] * bpow;
      bpow *= b;
    }
    return acc;
  }

  /// Multiplicity of the root (1:0), i.e. the exponent of b dividing the form.
  int b_multiplicity() const {
    assert(!is_zero());
    return degree() - univariate::degree(dehomogenized());
  }

  /// f(a, 1) as a univariate polynomial in a.
  univariate::Poly<Element> dehomogenized() const {
    auto p = c_;
    univariate::trim(p);
    return p;
  }

  /// b^extra * g(a, b), where g is the homogenization of p in degree deg p.
  static BinaryForm from_dehomogenized(F field, univariate::Poly<Element> p, int extra) {
    if (p.empty()) return BinaryForm(field);
    p.resize(p.size() + static_cast<std::size_t>(extra), field.zero());
    return BinaryForm(field, std::move(p));
  }

  friend BinaryForm operator+(const BinaryForm& x, const BinaryForm& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    assert(x.degree() == y.degree());
    BinaryForm s = x;
    for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] += y.c_[i];
    s.normalize();
    return s;
  }

  friend BinaryForm operator-(const BinaryForm& x) {
    BinaryForm s = x;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  friend BinaryForm operator-(const BinaryForm& x, const BinaryForm& y) { return x + (-y); }

  friend BinaryForm operator*(const BinaryForm& x, const BinaryForm& y) {
    if (x.is_zero() || y.is_zero()) return BinaryForm(x.field_);
    std::vector<Element> c(x.c_.size() + y.c_.size() - 1, x.field_.zero());
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (kronstab::is_zero(x.c_[i])) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) c[i + j] += x.c_[i] * y.c_[j];
    }
    return BinaryForm(x.field_, std::move(c));
  }

  friend bool operator==(const BinaryForm& x, const BinaryForm& y) { return x.c_ == y.c_; }

 private:
  void normalize() {
    for (const auto& c : c_)
      if (!kronstab::is_zero(c)) return;
    c_.clear();
  }

  F field_{};
  std::vector<Element> c_;
};

/// Monic gcd of a family of binary forms. The a-part is the univariate gcd of
/// the dehomogenizations f(a, 1); the root at infinity is tracked as the
/// minimal power of b. Zero forms are ignored; if all are zero the ideal is zero.
template <class F>
BinaryForm<F> gcd_of_forms(const F& field, const std::vector<BinaryForm<F>>& forms) {
  using E = typename F::Element;
  bool any = false;
  int bmult = 0;
  univariate::Poly<E> g;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    const int mult = f.b_multiplicity();
    if (!any) {
      any = true;
      bmult = mult;
      g = univariate::monic(field, f.dehomogenized());
    } else {
      bmult = std::min(bmult, mult);
      if (g.size() > 1) g = univariate::gcd(field, g, f.dehomogenized());
    }
  }
  if (!any) throw Error("zero ideal");
  return BinaryForm<F>::from_dehomogenized(field, std::move(g), bmult);
}

/// True when g divides f exactly (f may be zero).
template <class F>
bool divides(const BinaryForm<F>& g, const BinaryForm<F>& f) {
  if (f.is_zero()) return true;
  if (g.is_zero()) return false;
  if (g.b_multiplicity() > f.b_multiplicity()) return false;
  return univariate::divmod(g.field(), f.dehomogenized(), g.dehomogenized()).second.empty();
}

template <class F>
using FormMatrix = std::vector<std::vector<BinaryForm<F>>>;

/// All j x j minors of a matrix of binary forms, one level j at a time.
/// Level j is computed from level j-1 by Laplace expansion along the first
/// selected row, with minors keyed by (row subset, column subset) bitmasks.
template <class F>
class MinorLadder {
 public:
  MinorLadder(F field, FormMatrix<F> m) : field_(field), m_(std::move(m)) {
    rows_ = static_cast<int>(m_.size());
    cols_ = rows_ ? static_cast<int>(m_.front().size()) : 0;
    assert(rows_ <= 31 && cols_ <= 31);
    level_[key(0, 0)] = BinaryForm<F>::constant(field_, field_.one());
  }

  int level() const { return j_; }
  int max_level() const { return std::min(rows_, cols_); }

  /// Advances to the next level and returns its minors in a deterministic order
  /// (row subsets lexicographic, then column subsets lexicographic).
  std::vector<BinaryForm<F>> next() {
    assert(j_ < max_level());
    ++j_;
    std::unordered_map<std::uint64_t, BinaryForm<F>> fresh;
    std::vector<BinaryForm<F>> out;
    const auto row_sets = masks(rows_, j_);
    const auto col_sets = masks(cols_, j_);
    for (auto rm : row_sets) {
      const int r0 = __builtin_ctz(rm);
      const std::uint32_t rest = rm & (rm - 1);
      for (auto cm : col_sets) {
        BinaryForm<F> acc(field_);
        int idx = 0;
        for (std::uint32_t cs = cm; cs; cs &= cs - 1, ++idx) {
          const int c = __builtin_ctz(cs);
          const auto& entry = m_[r0][c];
          if (entry.is_zero()) continue;
          auto it = level_.find(key(rest, cm & ~(1u << c)));
          if (it == level_.end() || it->second.is_zero()) continue;
          auto term = entry * it->second;
          acc = (idx % 2 == 0) ? acc + term : acc - term;
        }
        if (!acc.is_zero()) fresh.emplace(key(rm, cm), acc);
        out.push_back(std::move(acc));
      }
    }
    level_ = std::move(fresh);
    return out;
  }

 private:
  static std::uint64_t key(std::uint32_t rows, std::uint32_t cols) {
    return (static_cast<std::uint64_t>(rows) << 32) | cols;
  }

  static std::vector<std::uint32_t> masks(int n, int k) {
    std::vector<std::uint32_t> out;
    for (const auto& s : subsets_lex(n, k)) {
      std::uint32_t mask = 0;
      for (int i : s) mask |= 1u << i;
      out.push_back(mask);
    }
    return out;
  }

  F field_;
  FormMatrix<F> m_;
  int rows_ = 0;
  int cols_ = 0;
  int j_ = 0;
  std::unordered_map<std::uint64_t, BinaryForm<F>> level_;
};

/// All k x k minors (k = 0 gives the single constant form 1).
template <class F>
std::vector<BinaryForm<F>> minors(const F& field, const FormMatrix<F>& m, int k) {
  MinorLadder<F> ladder(field, m);
  if (k < 0 || k > ladder.max_level()) throw PreconditionError("minor size exceeds matrix dimensions");
  if (k == 0) return {BinaryForm<F>::constant(field, field.one())};
  std::vector<BinaryForm<F>> out;
  for (int j = 0; j < k; ++j) out = ladder.next();
  return out;
}

/// Points of P^1 where a nonzero form vanishes, as far as they are rational
/// over the base field: (1:0) when b divides the form, (alpha:1) for rational
/// roots alpha. `residual` is the rootless remainder of the squarefree part.
template <class F>
struct FormRoots {
  std::vector<std::pair<typename F::Element, typename F::Element>> points;
  univariate::Poly<typename F::Element> residual;
  bool complete = true;
};

template <class F>
FormRoots<F> projective_roots(const F& field, const BinaryForm<F>& f) {
  assert(!f.is_zero());
  FormRoots<F> out;
  if (f.b_multiplicity() > 0) out.points.emplace_back(field.one(), field.zero());
  auto search = univariate::roots(field, f.dehomogenized());
  for (const auto& r : search.roots) out.points.emplace_back(r, field.one());
  out.residual = std::move(search.residual);
  out.complete = search.complete;
  return out;
}

}  // namespace kronstab
