#pragma once

// The degeneracy locus D(A) = { x in P^n : rank A(x) <= k-1 }, its dimension,
// the filtration indices (sigma, tau), and the reduction of boundary maps to
// their normal form.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kronstab/git_stability.hpp"
#include "kronstab/model.hpp"

namespace kronstab {

/// Rank of the evaluated k x (m+k) matrix at x (over the map's field).
std::size_t rank_at_point(const KroneckerMap& a, const std::vector<Rational>& x);
std::size_t rank_at_point(const KroneckerMap& a, const PrimeField& f, const std::vector<Zp>& x);

inline constexpr std::uint32_t kDegeneracyPrime = 31;

enum class DegeneracyStrategy { automatic, enumeration, slicing };

struct DegeneracyOptions {
  std::uint32_t prime = kDegeneracyPrime;
  DegeneracyStrategy strategy = DegeneracyStrategy::automatic;
  int trials = 7;
  std::uint64_t seed = 1;
};

/// One slice L_d = P^n cut by the first d hyperplanes of a trial, with the
/// number of F_p-points of D(A) on it.
struct SliceRecord {
  int trial = 0;
  int codim = 0;
  std::uint64_t points = 0;
};

struct DegeneracyReport {
  /// -1 encodes the empty locus.
  int dim_estimate = -1;
  std::string method;  // "enumeration" or "slicing"
  std::uint32_t prime = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  /// Per-trial estimates; dim_estimate is their median.
  std::vector<int> trial_estimates;
  std::vector<SliceRecord> transcript;
  /// |D(A)(F_p)| when the whole space was enumerated.
  std::optional<std::uint64_t> point_count;
  int tau = 1;
  /// Dimension of the rank-0 locus D_0(A), exact (a linear subspace).
  int dim_D0 = -1;
  std::vector<std::string> warnings;
};

/// tau = max(1, dim + 2).
int tau_from_dimension(int dim);

/// Dimension of D(A) over F_p, estimated from point counts on random linear
/// slices. A slice is read as positive dimensional when it carries at least
/// p/2 points of D (a curve has about p points, a finite set of bounded degree
/// far fewer), so a trial's estimate is one more than the largest such
/// codimension. Components that are not defined over F_p are invisible, so the
/// estimate can be low; callers re-test at further primes.
DegeneracyReport degeneracy_dimension(const KroneckerMap& a, const DegeneracyOptions& options = {});

/// dim D_0(A) = n - dim span{f_{i,w}}.
int rank_zero_locus_dimension(const KroneckerMap& a);

/// Exact dim D(A) over the algebraic closure for k = 2, from the pencil:
/// D is the union over omega of P(leftker M(omega)). The generic fibre gives
/// dimension n - r + 1 (r = normal rank) unless the generic left kernel is the
/// common left kernel K0 of U and V; special omegas give n - rank M(omega).
struct ExactDegeneracy {
  int dim = -1;
  int normal_rank = 0;
  int min_rank = 0;
  int common_kernel_dim = 0;
};
ExactDegeneracy exact_degeneracy_dimension(const KroneckerMap& a);

struct FiltrationReport {
  Status status = Status::stable;
  int sigma = 1;
  int tau = 1;
  int dim_estimate = -1;
  /// sigma <= tau <= sigma + 1.
  bool chain_holds = true;
  /// sigma >= 2 iff tau >= 2.
  bool threshold_holds = true;
  /// The filtration statements only concern semistable maps.
  bool outside_semistable = false;
  /// Primes used for tau; more than one when a chain violation forced a re-test.
  std::vector<std::uint32_t> primes;
  /// k = 2: tau from the exact dimension.
  std::optional<int> exact_tau;
};

/// sigma from the exact verdict, tau from degeneracy_dimension. When the chain
/// fails, tau is re-estimated at the next prime (up to max_primes in total)
/// and the newest estimate replaces the old one: a reduction can both miss
/// conjugate points and gain spurious ones, so no estimate dominates.
FiltrationReport filtration_indices(const KroneckerMap& a, const DegeneracyOptions& options = {}, int max_primes = 8);

struct NormalFormResult {
  bool reduced = false;
  /// Names the failed condition when reduced is false.
  std::string reason;
  GroupElement g;
  KroneckerMap normal_form;
};

/// For k = 2, m odd, stable A with two rational omegas of nullity t = (m+1)/2
/// and forms meeting the boundary conditions, finds g with
/// act(g, A) == boundary_normal_form(n, m). Otherwise reports why not.
/// Throws PreconditionError outside k = 2, m odd, and Error when the
/// nullity-t omegas are irrational ("reduction requires field extension").
NormalFormResult normal_form_reduce(const KroneckerMap& a);

/// True when b is obtained from a by rescaling each W column by a nonzero scalar.
bool equal_up_to_column_scaling(const KroneckerMap& a, const KroneckerMap& b);

}  // namespace kronstab
