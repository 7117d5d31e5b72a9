#include "kronstab/git_stability.hpp"

#include <algorithm>
#include <sstream>

#include "kronstab/binary_form.hpp"
#include "kronstab/random.hpp"

namespace kronstab {

std::string to_string(Status s) {
  switch (s) {
    case Status::stable:
      return "stable";
    case Status::strictly_semistable:
      return "strictly_semistable";
    case Status::unstable:
      return "unstable";
  }
  return "?";
}

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + to_string(v[i]);
  return s;
}

std::string poly_string(const std::vector<Rational>& c) {
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (is_zero(c[i])) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c[i]) + ")";
    if (i >= 1) s += "*a";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string Witness::describe() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::generic:
      return "generic (" + join(point) + ")";
    case Kind::point:
      return "(" + join(point) + ")";
    case Kind::factor:
      return std::string("roots of ") + poly_string(factor) + " at b = 1" + (irreducible ? " (irreducible)" : "");
    case Kind::kernel:
      return "kernel vector (" + join(point) + ")";
    case Kind::subspace:
      return (subspace_dim == 1 ? "span of (" : "kernel of functional (") + join(point) + ")";
  }
  return "?";
}

template <class F>
PencilAnalysis analyze_pencil(const Pencil<F>& pencil) {
  const F& f = pencil.field();
  PencilAnalysis out;
  out.cols = static_cast<int>(pencil.cols());
  FormMatrix<F> m(pencil.rows(), std::vector<BinaryForm<F>>(pencil.cols()));
  for (std::size_t i = 0; i < pencil.rows(); ++i)
    for (std::size_t j = 0; j < pencil.cols(); ++j) m[i][j] = BinaryForm<F>::linear(f, pencil.U(i, j), pencil.V(i, j));

  MinorLadder<F> ladder(f, m);
  std::vector<BinaryForm<F>> divisors;
  while (ladder.level() < ladder.max_level()) {
    auto level = ladder.next();
    const bool all_zero = std::all_of(level.begin(), level.end(), [](const auto& x) { return x.is_zero(); });
    if (all_zero) break;
    divisors.push_back(gcd_of_forms(f, level));
    out.dd_degrees.push_back(divisors.back().degree());
  }
  out.normal_rank = static_cast<int>(divisors.size());
  out.min_rank = 0;
  while (out.min_rank < out.normal_rank && divisors[static_cast<std::size_t>(out.min_rank)].degree() == 0) ++out.min_rank;
  out.max_nullity = out.cols - out.min_rank;

  if (out.min_rank == out.normal_rank) {
    out.witness.kind = Witness::Kind::generic;
    out.witness.point = {Rational(1), Rational(0)};
    return out;
  }
  const auto roots = projective_roots(f, divisors[static_cast<std::size_t>(out.min_rank)]);
  if (!roots.points.empty()) {
    out.witness.kind = Witness::Kind::point;
    out.witness.point = {f.to_rational(roots.points.front().first), f.to_rational(roots.points.front().second)};
    return out;
  }
  out.witness.kind = Witness::Kind::factor;
  for (const auto& c : roots.residual) out.witness.factor.push_back(f.to_rational(c));
  const int deg = static_cast<int>(roots.residual.size()) - 1;
  out.witness.irreducible = roots.complete && deg >= 1 && deg <= 3;
  return out;
}

template PencilAnalysis analyze_pencil(const Pencil<RationalField>&);
template PencilAnalysis analyze_pencil(const Pencil<PrimeField>&);

int filtration_top(const Dimensions& d) { return (d.m + 3) / 2 + d.n - d.m; }

int filtration_sigma(const Dimensions& d, int max_nullity) {
  return std::max(1, std::min(filtration_top(d), max_nullity - d.m + d.n));
}

Status status_from_nullity(const Dimensions& d, int max_nullity) {
  if (2 * max_nullity < d.m + 2) return Status::stable;
  if (2 * max_nullity == d.m + 2) return Status::strictly_semistable;
  return Status::unstable;
}

namespace {

StabilityVerdict kernel_verdict(const KroneckerMap& a) {
  StabilityVerdict v;
  v.injective = false;
  v.status = Status::unstable;
  v.max_nullity = a.dims().width();
  v.sigma = filtration_sigma(a.dims(), v.max_nullity);
  with_field(a.field(), [&](const auto& f) {
    auto k = kernel_basis(a.flattening(f));
    v.witness.kind = Witness::Kind::kernel;
    for (std::size_t r = 0; r < k.rows(); ++r) v.witness.point.push_back(f.to_rational(k(r, 0)));
  });
  return v;
}

}  // namespace

StabilityVerdict git_verdict(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  if (d.k != 2) throw PreconditionError("exact verdict needs k = 2; use the probabilistic check for k >= 3");
  if (!a.is_injective()) return kernel_verdict(a);
  StabilityVerdict v;
  v.pencil = with_field(a.field(), [&](const auto& f) { return analyze_pencil(pencil_of(a, f)); });
  v.max_nullity = v.pencil->max_nullity;
  v.status = status_from_nullity(d, v.max_nullity);
  if (d.m % 2 == 1 && v.status == Status::strictly_semistable)
    throw Error("internal: strictly semistable verdict for odd m");
  v.sigma = filtration_sigma(d, v.max_nullity);
  v.witness = v.pencil->witness;
  v.worst_ratio = Rational(v.max_nullity);
  return v;
}

namespace {

using Zmat = Matrix<PrimeField>;

// M(phi) = sum_t phi_t * parts[t], a family of matrices linear in phi in I (x) F_p.
struct LinearFamily {
  int subspace_dim = 1;
  std::vector<Zmat> parts;

  Zmat at(const std::vector<Zp>& phi) const {
    Zmat out = parts.front();
    for (std::size_t i = 0; i < out.rows(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j) {
        Zp acc = phi[0] * parts[0](i, j);
        for (std::size_t t = 1; t < parts.size(); ++t) acc += phi[t] * parts[t](i, j);
        out(i, j) = acc;
      }
    return out;
  }
};

// dim I' = 1, I' = <phi>: A(w) lies in phi (x) V iff phi_j A_i(w) = phi_i A_j(w) for all i < j.
LinearFamily line_family(const KroneckerMap& a, const PrimeField& f) {
  const int k = a.dims().k;
  const std::size_t v = static_cast<std::size_t>(a.dims().vars());
  const std::size_t n = static_cast<std::size_t>(a.dims().width());
  std::vector<Zmat> rows;
  for (int i = 0; i < k; ++i) rows.push_back(a.row_coefficients(f, i));
  const std::size_t pairs = static_cast<std::size_t>(k * (k - 1) / 2);
  LinearFamily fam;
  fam.subspace_dim = 1;
  fam.parts.assign(static_cast<std::size_t>(k), Zmat(f, pairs * v, n));
  std::size_t block = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++block)
      for (std::size_t l = 0; l < v; ++l)
        for (std::size_t w = 0; w < n; ++w) {
          fam.parts[static_cast<std::size_t>(j)](block * v + l, w) += rows[static_cast<std::size_t>(i)](l, w);
          fam.parts[static_cast<std::size_t>(i)](block * v + l, w) -= rows[static_cast<std::size_t>(j)](l, w);
        }
  return fam;
}

// dim I' = k-1, I' = ker(psi): A(w) lies in I' (x) V iff sum_i psi_i A_i(w) = 0.
LinearFamily hyperplane_family(const KroneckerMap& a, const PrimeField& f) {
  LinearFamily fam;
  fam.subspace_dim = a.dims().k - 1;
  for (int i = 0; i < a.dims().k; ++i) fam.parts.push_back(a.row_coefficients(f, i));
  return fam;
}

struct FamilyMax {
  int nullity = -1;
  std::vector<Zp> phi;

  void offer(int value, const std::vector<Zp>& at) {
    if (value > nullity) {
      nullity = value;
      phi = at;
    }
  }
};

// All points of P^{k-1}(F_p), normalized so the first nonzero coordinate is 1.
template <class Fn>
void for_each_projective_point(const PrimeField& f, int k, Fn&& fn) {
  std::vector<Zp> x(static_cast<std::size_t>(k), f.zero());
  for (int lead = 0; lead < k; ++lead) {
    std::fill(x.begin(), x.end(), f.zero());
    x[static_cast<std::size_t>(lead)] = f.one();
    const int free = k - 1 - lead;
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(free), 0);
    while (true) {
      for (int t = 0; t < free; ++t) x[static_cast<std::size_t>(lead + 1 + t)] = Zp(digits[static_cast<std::size_t>(t)], f.p);
      fn(x);
      int t = 0;
      while (t < free && ++digits[static_cast<std::size_t>(t)] == f.p) digits[static_cast<std::size_t>(t++)] = 0;
      if (t == free) break;
    }
  }
}

univariate::Poly<Zp> interpolate(const PrimeField& f, const std::vector<Zp>& xs, const std::vector<Zp>& ys) {
  univariate::Poly<Zp> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    univariate::Poly<Zp> basis{f.one()};
    Zp denom = f.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = univariate::mul(f, basis, univariate::Poly<Zp>{-xs[j], f.one()});
      denom *= xs[i] - xs[j];
    }
    const Zp scale = ys[i] / denom;
    for (auto& c : basis) c *= scale;
    if (out.size() < basis.size()) out.resize(basis.size(), f.zero());
    for (std::size_t c = 0; c < basis.size(); ++c) out[c] += basis[c];
  }
  univariate::trim(out);
  return out;
}

// Rows and columns of a nonsingular maximal square submatrix.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> maximal_minor(const Zmat& m) {
  Zmat e = m;
  auto cols = rref(e);
  Zmat t = m.transpose();
  auto rows = rref(t);
  return {rows, cols};
}

Zp submatrix_det(const Zmat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Zmat s(m.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return determinant(s);
}

std::vector<Zp> combine(const std::vector<Zp>& p0, const Zp& t, const std::vector<Zp>& q) {
  std::vector<Zp> out(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) out[i] = p0[i] + t * q[i];
  return out;
}

// Maximum nullity over P^2(F_p) by sweeping lines through P0 = (1:0:0).
FamilyMax sweep_plane(const PrimeField& f, const LinearFamily& fam, int trials, Rng& rng) {
  const int cols = static_cast<int>(fam.parts.front().cols());
  FamilyMax best;
  const std::vector<Zp> p0{f.one(), f.zero(), f.zero()};
  best.offer(cols - static_cast<int>(rank(fam.at(p0))), p0);
  auto sweep_line = [&](const std::vector<Zp>& q) {
    best.offer(cols - static_cast<int>(rank(fam.at(q))), q);
    // Generic rank on the line from random parameters.
    std::size_t generic = 0;
    Zp tstar = f.zero();
    for (int s = 0; s < std::max(trials, 1); ++s) {
      const Zp t(static_cast<std::uint32_t>(rng.below(f.p)), f.p);
      const std::size_t r = rank(fam.at(combine(p0, t, q)));
      if (s == 0 || r > generic) {
        generic = r;
        tstar = t;
      }
    }
    best.offer(cols - static_cast<int>(generic), combine(p0, tstar, q));
    if (generic == 0) return;
    auto [rows, cs] = maximal_minor(fam.at(combine(p0, tstar, q)));
    // det of the chosen minor along the line has degree <= generic.
    std::vector<Zp> xs, ys;
    for (std::size_t s = 0; s <= generic; ++s) {
      const Zp t(static_cast<std::uint32_t>(s), f.p);
      xs.push_back(t);
      ys.push_back(submatrix_det(fam.at(combine(p0, t, q)), rows, cs));
    }
    const auto det = interpolate(f, xs, ys);
    for (const auto& t : univariate::roots(f, det).roots) {
      const auto x = combine(p0, t, q);
      best.offer(cols - static_cast<int>(rank(fam.at(x))), x);
    }
  };
  for (std::uint32_t c = 0; c < f.p; ++c) sweep_line({f.zero(), f.one(), Zp(c, f.p)});
  sweep_line({f.zero(), f.zero(), f.one()});
  return best;
}

FamilyMax family_max(const PrimeField& f, const LinearFamily& fam, int trials, Rng& rng, std::uint32_t enumeration_limit) {
  const int k = static_cast<int>(fam.parts.size());
  const int cols = static_cast<int>(fam.parts.front().cols());
  if (k == 3 && f.p > enumeration_limit) return sweep_plane(f, fam, trials, rng);
  FamilyMax best;
  for_each_projective_point(f, k, [&](const std::vector<Zp>& x) {
    best.offer(cols - static_cast<int>(rank(fam.at(x))), x);
  });
  return best;
}

}  // namespace

StabilityVerdict git_verdict_probabilistic(const KroneckerMap& a, std::uint32_t p, int trials, std::uint64_t seed,
                                           std::uint32_t enumeration_limit) {
  const Dimensions& d = a.dims();
  if (d.k > 3) throw PreconditionError("probabilistic check supports k = 2 and k = 3");
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  check_reduction(a, p);
  const PrimeField f{p};
  StabilityVerdict v;
  v.probabilistic = true;
  v.prime = p;
  v.caveat = "verdict certifies the reduction modulo " + std::to_string(p) +
             "; agreement over several primes is evidence, not proof, for Q";
  if (rank(a.flattening(f)) != static_cast<std::size_t>(d.width())) {
    auto k = kernel_basis(a.flattening(f));
    v.injective = false;
    v.status = Status::unstable;
    v.max_nullity = d.width();
    v.witness.kind = Witness::Kind::kernel;
    for (std::size_t r = 0; r < k.rows(); ++r) v.witness.point.push_back(f.to_rational(k(r, 0)));
    return v;
  }
  Rng rng(seed);
  std::vector<LinearFamily> families{line_family(a, f)};
  if (d.k == 3) families.push_back(hyperplane_family(a, f));
  bool equal = false, above = false;
  bool first = true;
  for (const auto& fam : families) {
    const FamilyMax best = family_max(f, fam, trials, rng, enumeration_limit);
    const long lhs = static_cast<long>(d.k) * best.nullity;
    const long rhs = static_cast<long>(d.width()) * fam.subspace_dim;
    above = above || lhs > rhs;
    equal = equal || lhs == rhs;
    Rational ratio(best.nullity, fam.subspace_dim);
    ratio.canonicalize();
    if (fam.subspace_dim == 1) v.max_nullity = best.nullity;
    if (first || ratio > v.worst_ratio) {
      first = false;
      v.worst_ratio = ratio;
      v.witness.kind = Witness::Kind::subspace;
      v.witness.subspace_dim = fam.subspace_dim;
      v.witness.point.clear();
      for (const auto& x : best.phi) v.witness.point.push_back(f.to_rational(x));
    }
  }
  v.status = above ? Status::unstable : equal ? Status::strictly_semistable : Status::stable;
  v.sigma = d.k == 2 ? filtration_sigma(d, v.max_nullity) : 0;
  return v;
}

}  // namespace kronstab
