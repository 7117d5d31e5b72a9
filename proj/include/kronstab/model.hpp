#pragma once

// The map A : W -> I (x) V, stored as a k x (m+k) grid of linear forms in
// x_0..x_n. Row i is the I-index, column w the W-index:
//
//   A(e_w) = sum_i e_i (x) f_{i,w},   f_{i,w} = sum_l coeff(i, w, l) x_l.
//
// Printed presentations of Steiner sheaves usually show the transpose (one
// column per W basis vector); every constructor here uses rows = I.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kronstab/field.hpp"
#include "kronstab/matrix.hpp"

namespace kronstab {

struct Dimensions {
  int n = 0;  // P(V) = P^n
  int m = 0;  // rank of the cokernel sheaf
  int k = 2;  // dim I

  int width() const { return m + k; }
  int vars() const { return n + 1; }
  /// Throws PreconditionError unless k >= 2, n >= 2, m >= 1, m+k <= k(n+1).
  void validate() const;
  std::string to_string() const;
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

class KroneckerMap {
 public:
  KroneckerMap() = default;
  /// The zero map; fill with set().
  KroneckerMap(Dimensions dims, FieldSpec field);

  const Dimensions& dims() const { return dims_; }
  const FieldSpec& field() const { return field_; }

  const Rational& coeff(int i, int w, int l) const { return c_[index(i, w, l)]; }
  /// Stores the value, reduced into [0, p) for prime-field maps.
  void set(int i, int w, int l, const Rational& value);
  /// Sets f_{i,w} = x_var.
  void set_variable(int i, int w, int var) { set(i, w, var, Rational(1)); }

  bool is_zero() const;
  /// Rank of the flattening equals m+k.
  bool is_injective() const;

  /// The k(n+1) x (m+k) matrix of A : W -> I (x) V; row i*(n+1)+l.
  template <class F>
  Matrix<F> flattening(const F& f) const {
    Matrix<F> out(f, static_cast<std::size_t>(dims_.k * dims_.vars()), static_cast<std::size_t>(dims_.width()));
    for (int i = 0; i < dims_.k; ++i)
      for (int w = 0; w < dims_.width(); ++w)
        for (int l = 0; l < dims_.vars(); ++l) out(i * dims_.vars() + l, w) = f.from_rational(coeff(i, w, l));
    return out;
  }

  /// Coefficients of row i: an (n+1) x (m+k) matrix, column w = f_{i,w}.
  template <class F>
  Matrix<F> row_coefficients(const F& f, int i) const {
    Matrix<F> out(f, static_cast<std::size_t>(dims_.vars()), static_cast<std::size_t>(dims_.width()));
    for (int w = 0; w < dims_.width(); ++w)
      for (int l = 0; l < dims_.vars(); ++l) out(l, w) = f.from_rational(coeff(i, w, l));
    return out;
  }

  /// Coefficient matrix of the variable x_l: k x (m+k).
  template <class F>
  Matrix<F> variable_slice(const F& f, int l) const {
    Matrix<F> out(f, static_cast<std::size_t>(dims_.k), static_cast<std::size_t>(dims_.width()));
    for (int i = 0; i < dims_.k; ++i)
      for (int w = 0; w < dims_.width(); ++w) out(i, w) = f.from_rational(coeff(i, w, l));
    return out;
  }

  /// The scalar k x (m+k) matrix obtained by substituting x.
  template <class F>
  Matrix<F> evaluate(const F& f, const std::vector<typename F::Element>& x) const {
    Matrix<F> out(f, static_cast<std::size_t>(dims_.k), static_cast<std::size_t>(dims_.width()));
    for (int i = 0; i < dims_.k; ++i)
      for (int w = 0; w < dims_.width(); ++w) {
        typename F::Element acc = f.zero();
        for (int l = 0; l < dims_.vars(); ++l) {
          const Rational& c = coeff(i, w, l);
          if (!kronstab::is_zero(c)) acc += f.from_rational(c) * x[l];
        }
        out(i, w) = acc;
      }
    return out;
  }

  friend bool operator==(const KroneckerMap&, const KroneckerMap&) = default;

 private:
  std::size_t index(int i, int w, int l) const {
    return (static_cast<std::size_t>(i) * dims_.width() + w) * dims_.vars() + l;
  }

  Dimensions dims_;
  FieldSpec field_;
  std::vector<Rational> c_;
};

/// A rational map reduces modulo any prime not dividing a denominator
/// (BadReduction otherwise); a prime-field map only lives over its own prime.
void check_reduction(const KroneckerMap& a, std::uint32_t p);

/// For k = 2 the slice of A at omega = (a:b) is M(a,b) = b*U - a*V, where U
/// and V are the coefficient matrices of the two rows. Its left kernel is the
/// set of points x where the two rows are proportional with ratio omega, and
/// (m+2) - rank M(a,b) = dim(R_omega n T_A) for injective A.
template <class F>
struct Pencil {
  Matrix<F> U;
  Matrix<F> V;

  const F& field() const { return U.field(); }
  std::size_t rows() const { return U.rows(); }
  std::size_t cols() const { return U.cols(); }

  Matrix<F> at(const typename F::Element& a, const typename F::Element& b) const {
    Matrix<F> out(U.field(), U.rows(), U.cols());
    for (std::size_t i = 0; i < U.rows(); ++i)
      for (std::size_t j = 0; j < U.cols(); ++j) out(i, j) = b * U(i, j) - a * V(i, j);
    return out;
  }
};

/// Throws PreconditionError for k != 2 or non-injective A.
template <class F>
Pencil<F> pencil_of(const KroneckerMap& a, const F& f) {
  if (a.dims().k != 2) throw PreconditionError("pencil requires k = 2");
  if (!a.is_injective()) throw PreconditionError("pencil requires an injective map");
  return Pencil<F>{a.row_coefficients(f, 0), a.row_coefficients(f, 1)};
}

/// (P, Q, S) acting by A -> (P (x) S) o A o Q^{-1}: P on I, Q on W, S on the
/// coefficient vectors of the linear forms. A left action; composition is
/// (P_g P_h, Q_g Q_h, S_g S_h). Determinants are not normalized.
struct GroupElement {
  Matrix<RationalField> P;
  Matrix<RationalField> Q;
  std::optional<Matrix<RationalField>> S;

  static GroupElement identity(const Dimensions& d, bool with_s = false);
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
};

/// Throws PreconditionError on dimension mismatch or singular P, Q, S.
KroneckerMap act(const GroupElement& g, const KroneckerMap& a);

class Rng;
/// Invertible matrices with integer entries in [-bound, bound].
Matrix<RationalField> random_invertible(Rng& rng, std::size_t size, long bound);
GroupElement random_group_element(Rng& rng, const Dimensions& d, long bound, bool with_s);

/// Integer coefficients uniform in [-bound, bound]; deterministic in seed.
KroneckerMap random_map(const Dimensions& dims, std::uint64_t seed, long bound,
                        FieldSpec field = FieldSpec::rationals());

/// Row 0 carries random forms in its first s columns and zeros after them;
/// row 1 is random. The last m+2-s columns map into e_1 (x) V, so the map has
/// nullity >= m+2-s at e_1 and is unstable whenever 2s < m+2.
KroneckerMap destabilized_block(const Dimensions& dims, int s, std::uint64_t seed, long bound);

/// Rows [x_0..x_n, 0..0] and [0..0, x_0..x_n], the second shifted as far
/// right as possible. Requires n <= m+1 and m+2 <= 2(n+1).
KroneckerMap schwarzenberger(int n, int m);

/// For odd m and t = (m+1)/2: rows [x_0..x_{t-1}, 0..0, x_t] and
/// [0..0, x_0..x_{t-1}, x_{t+1}]. Requires n >= t+1.
KroneckerMap boundary_normal_form(int n, int m);

/// n = m = 3: rows [0, 0, x0, x1, x2] and [x0, x1, 0, 0, x3]. Its degeneracy
/// locus is the line {x0 = x1 = 0}.
KroneckerMap remark_fixture();

/// n = m = 2, k = 3: rows [x1, x0, 0, 0, 0], [0, x2, x1, x0, 0],
/// [0, 0, 0, x2, x1]. A stable map whose degeneracy locus is the line x1 = 0.
KroneckerMap k3_fixture();

/// Fixture families: "remark-s3", "k3-counterexample", "schwarzenberger-N-M", "boundary-N-M".
std::vector<std::string> fixture_families();
KroneckerMap fixture(const std::string& id);

}  // namespace kronstab
