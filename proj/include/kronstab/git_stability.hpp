#pragma once

// GIT stability of A under GL(I) x GL(W).
//
// For k = 2 the only proper subspaces of I are the lines omega, and A is
// stable (semistable) iff dim(R_omega n T_A) < (m+2)/2 (<=) for every omega.
// That intersection is the nullity of the pencil b*U - a*V at omega, so the
// worst omega is read off the determinantal divisors g_j (gcd of the j x j
// minors): rank M(omega) < j exactly at the roots of g_j.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kronstab/model.hpp"

namespace kronstab {

enum class Status { stable, strictly_semistable, unstable };
std::string to_string(Status s);

/// Where the worst behaviour is attained.
struct Witness {
  enum class Kind {
    none,
    generic,   // every omega attains the maximum; `point` is one of them
    point,     // a rational point (a:b) of P(I)
    factor,    // the points are the roots of `factor` (no rational root found)
    kernel,    // A is not injective; `point` is a kernel vector of W
    subspace,  // probabilistic check: `point` spans I' (dim 1) or `point` is the
               // functional cutting out I' (dim k-1)
  };
  Kind kind = Kind::none;
  std::vector<Rational> point;
  /// Coefficients of f(a, 1), low to high; roots (alpha:1) are the witnesses.
  std::vector<Rational> factor;
  /// True when `factor` is known to be irreducible over the base field.
  bool irreducible = false;
  int subspace_dim = 0;

  std::string describe() const;
};

struct PencilAnalysis {
  int cols = 0;
  int normal_rank = 0;
  /// deg g_j for j = 1..normal_rank.
  std::vector<int> dd_degrees;
  /// Minimum rank over all points of P^1 over the algebraic closure.
  int min_rank = 0;
  int max_nullity = 0;
  Witness witness;
};

template <class F>
PencilAnalysis analyze_pencil(const Pencil<F>& pencil);

/// j0 = floor((m+3)/2) + n - m.
int filtration_top(const Dimensions& d);
/// sigma = max{j >= 1 : some omega has nullity >= j + m - n}, capped at j0.
int filtration_sigma(const Dimensions& d, int max_nullity);

struct StabilityVerdict {
  Status status = Status::stable;
  int max_nullity = 0;
  int sigma = 1;
  Witness witness;
  bool injective = true;
  std::optional<PencilAnalysis> pencil;

  bool probabilistic = false;
  std::uint32_t prime = 0;
  /// Largest dim T' / dim I' over the proper subspaces examined.
  Rational worst_ratio = 0;
  std::string caveat;
};

/// Exact verdict for k = 2. A non-injective map is reported unstable with a
/// kernel witness. Throws PreconditionError for k != 2.
StabilityVerdict git_verdict(const KroneckerMap& a);

/// Checks the slope condition k * dim T' < (m+k) * dim I' over every proper
/// subspace I' of I (x) F_p. Supports k = 2 and k = 3. Small primes enumerate
/// all subspaces; larger primes sweep the lines through a fixed point of P(I)
/// and locate rank drops on each line exactly from a determinant polynomial.
/// `trials` random points per line fix its generic rank; primes above
/// `enumeration_limit` use the sweep. Throws BadReduction when p divides a
/// denominator.
StabilityVerdict git_verdict_probabilistic(const KroneckerMap& a, std::uint32_t p, int trials = 3,
                                           std::uint64_t seed = 1, std::uint32_t enumeration_limit = 101);

/// Status from the k = 2 pencil bound: stable iff 2*nullity < m+2.
Status status_from_nullity(const Dimensions& d, int max_nullity);

}  // namespace kronstab
