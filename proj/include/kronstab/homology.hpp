#pragma once

// Sheaf-level invariants of F_A = coker(I* (x) O -> W* (x) O(1)), the map
// sending e_i* to f(e_i*) = sum_w f_{i,w} w*.
//
// Everything is computed from complexes of sums of line bundles on P^n. A
// complex term S^s I* (x) /\^j W* (x) O(d) is a free module whose basis labels
// are (symmetric multi-index over I*, subset of the W* basis); differentials
// are matrices of linear forms. Global sections of O(d) are the monomials of
// degree d, so each differential becomes a scalar matrix at every twist.
//
// H^0 of a cokernel from such a resolution: if 0 -> T_0 -> ... -> T_r -> E -> 0
// is exact and every H^i(T_j(t)) with 0 < i < n vanishes (true for line bundle
// sums), then H^0(E(t)) = coker(H^0(T_{r-1}(t)) -> H^0(T_r(t))) as long as
// r <= n-1, because the obstruction H^1 of the image injects into H^r(T_0(t)).
// That is why h0_wedge checks r <= n-1.

#include <optional>
#include <string>
#include <vector>

#include "kronstab/degeneracy.hpp"
#include "kronstab/model.hpp"

namespace kronstab {

/// dim H^0(P^n, O(d)) = binom(n+d, n), zero for d < 0.
std::uint64_t global_sections_dim(int n, int d);

struct BasisLabel {
  std::vector<int> sym;  // non-decreasing indices into the I* basis
  std::vector<int> ext;  // increasing indices into the W* basis
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// The term (+) O(twist)^multiplicity with one label per summand.
struct GradedFreeTerm {
  int twist = 0;
  std::size_t multiplicity = 0;
  std::vector<BasisLabel> labels;
};

/// rows x cols matrix whose entries are linear forms in `vars` variables.
class LinearFormMatrix {
 public:
  LinearFormMatrix() = default;
  LinearFormMatrix(std::size_t rows, std::size_t cols, int vars)
      : rows_(rows), cols_(cols), vars_(vars), c_(rows * cols * static_cast<std::size_t>(vars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int vars() const { return vars_; }
  const Rational& at(std::size_t r, std::size_t c, int l) const { return c_[(r * cols_ + c) * vars_ + l]; }
  Rational& at(std::size_t r, std::size_t c, int l) { return c_[(r * cols_ + c) * vars_ + l]; }
  LinearFormMatrix transpose() const;
  /// Coefficient matrix of x_l.
  Matrix<RationalField> slice(int l) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int vars_ = 0;
  std::vector<Rational> c_;
};

/// True when second * first is the zero matrix of quadratic forms over the
/// given field: the x_l x_l' coefficient is S_l F_l' + S_l' F_l.
bool composes_to_zero(const LinearFormMatrix& first, const LinearFormMatrix& second, const FieldSpec& field);

enum class Exactness { presentation, by_hypothesis, unverified };
std::string to_string(Exactness e);

/// terms[0] -> terms[1] -> ... ; differentials[j] maps terms[j] to terms[j+1]
/// (rows indexed by the target labels).
struct GradedFreeComplex {
  std::vector<GradedFreeTerm> terms;
  std::vector<LinearFormMatrix> differentials;
  FieldSpec field;
  Exactness exactness = Exactness::unverified;
};

/// Throws Error unless consecutive twists differ by one, matrix shapes match
/// the terms and every composition vanishes.
void verify_complex(const GradedFreeComplex& c);

/// I* (x) /\^{r-1} W* (x) O(r-1) -> /\^r W* (x) O(r), presenting /\^r F_A:
/// e_i* (x) w_S* -> sum_{w not in S} (-1)^{#{s in S : s < w}} f_{i,w} w_{S+w}*.
/// Requires 1 <= r <= m-1.
GradedFreeComplex build_sel_eis(const KroneckerMap& a, int r);

/// Eagon-Northcott complex with terms S^{r-j} I* (x) /\^j W* (x) O(j),
/// j = 0..r, and differential y^alpha (x) w -> sum_{alpha_i > 0} y^{alpha-e_i}
/// (x) f(e_i*) /\ w. Requires k = 2 and 1 <= r <= (m-1)/2, the range in which
/// it resolves /\^r F_A for stable A. Exactness is recorded as by_hypothesis
/// for stable maps and unverified otherwise.
GradedFreeComplex build_sel(const KroneckerMap& a, int r);

/// Same construction for any 1 <= r <= m+1 with no exactness claim.
GradedFreeComplex build_eagon_northcott(const KroneckerMap& a, int r);

/// The scalar matrix of H^0 of a differential whose source is O(source_twist):
/// columns (source label, monomial of degree source_twist), rows (target
/// label, monomial of degree source_twist + 1).
template <class F>
Matrix<F> global_section_matrix(const LinearFormMatrix& d, int source_twist, const F& field);

/// dim H^0((/\^r F_A)(t)) from the last map of the Eagon-Northcott complex.
/// Requires k = 2, 1 <= r <= (m-1)/2, r <= n-1 and A stable.
int h0_wedge(const KroneckerMap& a, int r, int t);

/// dim H^0((/\^s F_A)*(u)): the kernel on global sections of the dual of the
/// presentation, /\^s W (x) O(u-s) -> I (x) /\^{s-1} W (x) O(u-s+1).
/// Requires 1 <= s <= m-1.
int h0_dual_side(const KroneckerMap& a, int s, int u);

/// t_N(r) = -ceil(r(m+2)/m): the twist bringing the slope of /\^r F_A,
/// r(m+2)/m, into (-1, 0].
int normalization_twist(int m, int r);

struct HoppeEntry {
  int r = 0;
  int twist = 0;  // t_N(r)
  int h0 = 0;     // h^0 of the normalized reflexive hull
};

/// Direct and dual computations of the same h^0 on a reflexive wedge.
struct HoppeCrossCheck {
  int r = 0;
  int t = 0;
  int dual = 0;
  int direct = 0;
};

struct HoppeProfile {
  std::vector<HoppeEntry> entries;
  bool all_zero = true;
  int dim_D = -1;
  std::vector<HoppeCrossCheck> cross_checks;
  bool cross_checks_agree = true;
};

/// Hoppe's criterion for F_A: h^0((/\^r F_A)**(t_N(r))) for r = 1..m-1,
/// computed uniformly as h0_dual_side(A, m-r, t_N(r) + m + 2) from
/// (/\^r F)** = (/\^{m-r} F)* (x) O(m+2). Where /\^r F_A is already reflexive
/// (A stable, r <= (m-1)/2, r <= n-1, codim D >= (m+3)/2) the value is also
/// computed from the Eagon-Northcott side at three twists. Requires k = 2,
/// m odd, A injective and dim D(A) <= n-2; a codimension-one degeneracy
/// locus throws PreconditionError("torsion present, Hoppe inapplicable").
HoppeProfile hoppe_criterion(const KroneckerMap& a);

struct TorsionCheck {
  bool torsion = false;
  int dim_D = -1;
  /// Exact for k = 2, a point-count estimate otherwise.
  bool exact = true;
};

/// F_A has torsion iff D(A) has a component of codimension <= 1.
TorsionCheck torsion_check(const KroneckerMap& a, const DegeneracyOptions& options = {});

enum class MuVerdict { mu_stable, not_mu_stable, torsion };
std::string to_string(MuVerdict v);

struct MuStabilityReport {
  MuVerdict verdict = MuVerdict::mu_stable;
  TorsionCheck torsion;
  std::optional<HoppeProfile> hoppe;
  std::string evidence;
};

/// Torsion if dim D(A) >= n-1 (any k); a non-injective A has an O(1)
/// summand and is not mu-stable; otherwise (k = 2, m odd) mu-stable iff every
/// Hoppe h^0 vanishes. Throws PreconditionError when Hoppe would be needed
/// outside k = 2, m odd.
MuStabilityReport mu_stability_verdict(const KroneckerMap& a, const DegeneracyOptions& options = {});

struct ExtDimensions {
  int hom = 0;
  int ext1 = 0;
  int ext2 = 0;
  /// h^0(F_A(-1)), h^0(F_A) as used by the computation.
  int h0_minus1 = 0;
  int h0_zero = 0;
};

/// Applies Hom(-, F_A) to the presentation: Hom and Ext^1 are the kernel and
/// cokernel of W (x) H^0(F_A(-1)) -> I (x) H^0(F_A). Ext^2 vanishes because
/// H^1(F_A) = H^2(F_A(-1)) = 0, which the resolution shows for n >= 2 and is
/// checked. Requires k = 2 and A injective.
ExtDimensions ext_dimensions(const KroneckerMap& a);

/// Dimension of the stabilizer of [A] in P(Hom(W, I (x) V)) under
/// GL(I) x GL(W), modulo the two-dimensional subgroup of scalars that acts
/// trivially: dim{(P,Q) : (P (x) 1) A = A Q} - 1. The linear system contains
/// only the diagonal scalars (l, l); the projective stabilizer adds the ratio
/// direction, and the two trivial scalar directions are then removed.
int stabilizer_dimension(const KroneckerMap& a);

}  // namespace kronstab
