#include "kronstab/homology.hpp"

#include <algorithm>
#include <map>

#include "kronstab/combinatorics.hpp"
#include "kronstab/git_stability.hpp"

namespace kronstab {

std::uint64_t global_sections_dim(int n, int d) {
  if (d < 0) return 0;
  return binomial(n + d, n);
}

LinearFormMatrix LinearFormMatrix::transpose() const {
  LinearFormMatrix t(cols_, rows_, vars_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      for (int l = 0; l < vars_; ++l) t.at(c, r, l) = at(r, c, l);
  return t;
}

Matrix<RationalField> LinearFormMatrix::slice(int l) const {
  Matrix<RationalField> s({}, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) s(r, c) = at(r, c, l);
  return s;
}

bool composes_to_zero(const LinearFormMatrix& first, const LinearFormMatrix& second, const FieldSpec& field) {
  if (second.cols() != first.rows() || first.vars() != second.vars()) return false;
  return with_field(field, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    std::vector<Matrix<F>> a, b;
    for (int l = 0; l < first.vars(); ++l) {
      a.push_back(reduce(first.slice(l), f));
      b.push_back(reduce(second.slice(l), f));
    }
    for (int l = 0; l < first.vars(); ++l)
      for (int l2 = l; l2 < first.vars(); ++l2) {
        Matrix<F> q = b[l] * a[l2];
        if (l2 != l) {
          Matrix<F> other = b[l2] * a[l];
          for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) += other(i, j);
        }
        if (!q.is_zero()) return false;
      }
    return true;
  });
}

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::presentation: return "presentation";
    case Exactness::by_hypothesis: return "exact by hypothesis (stable map)";
    case Exactness::unverified: return "unverified";
  }
  return "?";
}

void verify_complex(const GradedFreeComplex& c) {
  if (c.differentials.size() + 1 != c.terms.size()) throw Error("complex: wrong number of differentials");
  for (const auto& t : c.terms)
    if (t.labels.size() != t.multiplicity) throw Error("complex: label count differs from multiplicity");
  for (std::size_t j = 0; j < c.differentials.size(); ++j) {
    const auto& d = c.differentials[j];
    if (c.terms[j + 1].twist != c.terms[j].twist + 1) throw Error("complex: linear differential needs twist gap 1");
    if (d.cols() != c.terms[j].multiplicity || d.rows() != c.terms[j + 1].multiplicity)
      throw Error("complex: differential shape does not match its terms");
    if (j > 0 && !composes_to_zero(c.differentials[j - 1], d, c.field))
      throw Error("complex: d^2 != 0 at term " + std::to_string(j));
  }
}

namespace {

GradedFreeTerm make_term(int k, int width, int sym_size, int ext_size, int twist) {
  GradedFreeTerm t;
  t.twist = twist;
  for (const auto& sym : multisets_lex(k, sym_size))
    for (const auto& ext : subsets_colex(width, ext_size)) t.labels.push_back({sym, ext});
  t.multiplicity = t.labels.size();
  return t;
}

std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> label_index(const GradedFreeTerm& t) {
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> idx;
  for (std::size_t i = 0; i < t.labels.size(); ++i) idx[{t.labels[i].sym, t.labels[i].ext}] = i;
  return idx;
}

// y^alpha (x) w_S* -> sum_{i in alpha} y^{alpha - e_i} (x) f(e_i*) /\ w_S*, with
// w* /\ w_S* = (-1)^{#{s in S : s < w}} w_{S+w}*.
LinearFormMatrix wedge_differential(const KroneckerMap& a, const GradedFreeTerm& src, const GradedFreeTerm& dst) {
  const Dimensions& d = a.dims();
  LinearFormMatrix out(dst.multiplicity, src.multiplicity, d.vars());
  const auto idx = label_index(dst);
  for (std::size_t c = 0; c < src.labels.size(); ++c) {
    const auto& lab = src.labels[c];
    for (std::size_t pos = 0; pos < lab.sym.size(); ++pos) {
      if (pos > 0 && lab.sym[pos] == lab.sym[pos - 1]) continue;  // each distinct i once
      const int i = lab.sym[pos];
      std::vector<int> sym = lab.sym;
      sym.erase(sym.begin() + static_cast<long>(pos));
      for (int w = 0; w < d.width(); ++w) {
        if (std::binary_search(lab.ext.begin(), lab.ext.end(), w)) continue;
        std::vector<int> ext = lab.ext;
        const auto it = std::lower_bound(ext.begin(), ext.end(), w);
        const long below = it - ext.begin();
        ext.insert(it, w);
        const std::size_t row = idx.at({sym, ext});
        const int sign = below % 2 == 0 ? 1 : -1;
        for (int l = 0; l < d.vars(); ++l) {
          const Rational& v = a.coeff(i, w, l);
          if (!is_zero(v)) out.at(row, c, l) += sign * v;
        }
      }
    }
  }
  return out;
}

GradedFreeComplex eagon_northcott(const KroneckerMap& a, int r) {
  const Dimensions& d = a.dims();
  GradedFreeComplex c;
  c.field = a.field();
  for (int j = 0; j <= r; ++j) c.terms.push_back(make_term(d.k, d.width(), r - j, j, j));
  for (int j = 1; j <= r; ++j) c.differentials.push_back(wedge_differential(a, c.terms[j - 1], c.terms[j]));
  verify_complex(c);
  return c;
}

std::size_t field_rank(const Matrix<RationalField>& m) { return rank_with_modular_shortcut(m); }
std::size_t field_rank(const Matrix<PrimeField>& m) { return rank(m); }

std::size_t gs_rank(const KroneckerMap& a, const LinearFormMatrix& d, int source_twist) {
  return with_field(a.field(), [&](const auto& f) { return field_rank(global_section_matrix(d, source_twist, f)); });
}

// The presentation /\^r F_A is always valid; callers impose the hypotheses.
int h0_wedge_impl(const KroneckerMap& a, int r, int t) {
  const Dimensions& d = a.dims();
  const auto c = build_sel_eis(a, r);
  const auto target = static_cast<long>(binomial(d.width(), r) * global_sections_dim(d.n, r + t));
  return static_cast<int>(target - static_cast<long>(gs_rank(a, c.differentials[0], r - 1 + t)));
}

std::uint64_t dual_side_columns(const Dimensions& d, int s, int u) {
  return binomial(d.width(), s) * global_sections_dim(d.n, u - s);
}

}  // namespace

GradedFreeComplex build_sel_eis(const KroneckerMap& a, int r) {
  const Dimensions& d = a.dims();
  if (r < 1 || r > d.m - 1)
    throw PreconditionError("exterior power presentation needs 1 <= r <= m-1 (r = " + std::to_string(r) + ")");
  GradedFreeComplex c;
  c.field = a.field();
  c.exactness = Exactness::presentation;
  c.terms.push_back(make_term(d.k, d.width(), 1, r - 1, r - 1));
  c.terms.push_back(make_term(d.k, d.width(), 0, r, r));
  c.differentials.push_back(wedge_differential(a, c.terms[0], c.terms[1]));
  verify_complex(c);
  return c;
}

GradedFreeComplex build_sel(const KroneckerMap& a, int r) {
  const Dimensions& d = a.dims();
  if (d.k != 2) throw PreconditionError("Eagon-Northcott resolution is built for k = 2");
  if (r < 1 || 2 * r > d.m - 1)
    throw PreconditionError("Eagon-Northcott resolution of /\\^r F_A needs 1 <= r <= (m-1)/2 (r = " +
                            std::to_string(r) + ", m = " + std::to_string(d.m) + ")");
  GradedFreeComplex c = eagon_northcott(a, r);
  const bool stable = a.is_injective() && git_verdict(a).status == Status::stable;
  c.exactness = stable ? Exactness::by_hypothesis : Exactness::unverified;
  return c;
}

GradedFreeComplex build_eagon_northcott(const KroneckerMap& a, int r) {
  if (r < 1 || r > a.dims().m + 1) throw PreconditionError("Eagon-Northcott complex needs 1 <= r <= m+1");
  return eagon_northcott(a, r);
}

template <class F>
Matrix<F> global_section_matrix(const LinearFormMatrix& d, int source_twist, const F& field) {
  const int n = d.vars() - 1;
  const std::size_t src = global_sections_dim(n, source_twist);
  const std::size_t dst = global_sections_dim(n, source_twist + 1);
  Matrix<F> out(field, d.rows() * dst, d.cols() * src);
  if (src == 0 || dst == 0) return out;
  const MonomialBasis sb(d.vars(), source_twist), tb(d.vars(), source_twist + 1);
  for (std::size_t mu = 0; mu < src; ++mu) {
    std::vector<int> e = sb.exponent(mu);
    for (int l = 0; l < d.vars(); ++l) {
      ++e[l];
      const auto target = static_cast<std::size_t>(tb.index_of(e));
      --e[l];
      for (std::size_t c = 0; c < d.cols(); ++c)
        for (std::size_t r = 0; r < d.rows(); ++r) {
          const Rational& v = d.at(r, c, l);
          if (!is_zero(v)) out(r * dst + target, c * src + mu) += field.from_rational(v);
        }
    }
  }
  return out;
}

template Matrix<RationalField> global_section_matrix(const LinearFormMatrix&, int, const RationalField&);
template Matrix<PrimeField> global_section_matrix(const LinearFormMatrix&, int, const PrimeField&);

int h0_wedge(const KroneckerMap& a, int r, int t) {
  const Dimensions& d = a.dims();
  if (d.k != 2) throw PreconditionError("h0_wedge needs k = 2");
  if (r < 1 || 2 * r > d.m - 1) throw PreconditionError("h0_wedge needs 1 <= r <= (m-1)/2");
  if (r > d.n - 1) throw PreconditionError("h0_wedge needs r <= n-1 so the resolution computes H^0");
  if (!a.is_injective() || git_verdict(a).status != Status::stable)
    throw PreconditionError("h0_wedge needs a stable map (the resolution is only exact then)");
  return h0_wedge_impl(a, r, t);
}

int h0_dual_side(const KroneckerMap& a, int s, int u) {
  const Dimensions& d = a.dims();
  if (s < 1 || s > d.m - 1) throw PreconditionError("h0_dual_side needs 1 <= s <= m-1");
  if (u - s < 0) return 0;
  const auto b = build_sel_eis(a, s).differentials[0].transpose();
  return static_cast<int>(dual_side_columns(d, s, u) - gs_rank(a, b, u - s));
}

int normalization_twist(int m, int r) {
  const int num = r * (m + 2);
  return -((num + m - 1) / m);
}

HoppeProfile hoppe_criterion(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  if (d.k != 2) throw PreconditionError("Hoppe's criterion is implemented for k = 2");
  if (d.m % 2 == 0) throw PreconditionError("Hoppe's criterion is applied for odd m only");
  if (!a.is_injective()) throw PreconditionError("Hoppe's criterion needs an injective map");
  HoppeProfile prof;
  prof.dim_D = exact_degeneracy_dimension(a).dim;
  if (prof.dim_D >= d.n - 1) throw PreconditionError("torsion present, Hoppe inapplicable");

  for (int r = 1; r <= d.m - 1; ++r) {
    const int t = normalization_twist(d.m, r);
    const int h = h0_dual_side(a, d.m - r, t + d.m + 2);
    prof.entries.push_back({r, t, h});
    if (h != 0) prof.all_zero = false;
  }

  const bool reflexive_range = 2 * (d.n - prof.dim_D) >= d.m + 3;
  if (reflexive_range && git_verdict(a).status == Status::stable) {
    constexpr std::uint64_t kMaxDualColumns = 400;
    for (int r = 1; 2 * r <= d.m - 1 && r <= d.n - 1; ++r) {
      const int tn = normalization_twist(d.m, r);
      for (int t = tn; t <= tn + 1; ++t) {
        const int u = t + d.m + 2;
        if (t > tn && dual_side_columns(d, d.m - r, u) > kMaxDualColumns) break;
        HoppeCrossCheck cc{r, t, h0_dual_side(a, d.m - r, u), h0_wedge_impl(a, r, t)};
        if (cc.dual != cc.direct) prof.cross_checks_agree = false;
        prof.cross_checks.push_back(cc);
      }
    }
  }
  return prof;
}

TorsionCheck torsion_check(const KroneckerMap& a, const DegeneracyOptions& options) {
  TorsionCheck tc;
  if (a.dims().k == 2) {
    tc.dim_D = exact_degeneracy_dimension(a).dim;
    tc.exact = true;
  } else {
    DegeneracyOptions opt = options;
    while (true) {
      try {
        tc.dim_D = degeneracy_dimension(a, opt).dim_estimate;
        break;
      } catch (const BadReduction&) {
        do ++opt.prime;
        while (!is_prime(opt.prime));
      }
    }
    tc.exact = false;
  }
  tc.torsion = tc.dim_D >= a.dims().n - 1;
  return tc;
}

std::string to_string(MuVerdict v) {
  switch (v) {
    case MuVerdict::mu_stable: return "mu_stable";
    case MuVerdict::not_mu_stable: return "not_mu_stable";
    case MuVerdict::torsion: return "torsion";
  }
  return "?";
}

MuStabilityReport mu_stability_verdict(const KroneckerMap& a, const DegeneracyOptions& options) {
  const Dimensions& d = a.dims();
  MuStabilityReport rep;
  rep.torsion = torsion_check(a, options);
  if (rep.torsion.torsion) {
    rep.verdict = MuVerdict::torsion;
    rep.evidence = "degeneracy locus has dimension " + std::to_string(rep.torsion.dim_D) + " >= n-1 = " +
                   std::to_string(d.n - 1) + ", so F_A has torsion";
    return rep;
  }
  if (!a.is_injective()) {
    rep.verdict = MuVerdict::not_mu_stable;
    rep.evidence = "A is not injective, so F_A has a direct summand O(1) of slope below mu(F_A)";
    return rep;
  }
  if (d.k != 2 || d.m % 2 == 0)
    throw PreconditionError("mu-stability beyond the torsion test is decided for k = 2 and odd m only");
  rep.hoppe = hoppe_criterion(a);
  rep.verdict = rep.hoppe->all_zero ? MuVerdict::mu_stable : MuVerdict::not_mu_stable;
  if (rep.hoppe->all_zero) {
    rep.evidence = "h0 of every normalized reflexive wedge vanishes";
  } else {
    for (const auto& e : rep.hoppe->entries)
      if (e.h0 != 0) {
        rep.evidence = "h0((/\\^" + std::to_string(e.r) + " F_A)**(" + std::to_string(e.twist) + ")) = " +
                       std::to_string(e.h0);
        break;
      }
  }
  return rep;
}

namespace {

// dim H^i(P^n, O(d)).
std::uint64_t line_bundle_cohomology(int n, int i, int d) {
  if (i == 0) return global_sections_dim(n, d);
  if (i == n && d <= -n - 1) return binomial(-d - 1, n);
  return 0;
}

// Upper bound for h^i(F_A(t)), i >= 1, from 0 -> I* (x) O(t) -> W* (x) O(t+1) -> F_A(t) -> 0.
std::uint64_t higher_cohomology_bound(const Dimensions& d, int i, int t) {
  return d.width() * line_bundle_cohomology(d.n, i, t + 1) + d.k * line_bundle_cohomology(d.n, i + 1, t);
}

}  // namespace

ExtDimensions ext_dimensions(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  if (d.k != 2) throw PreconditionError("Ext dimensions are computed for k = 2");
  if (exact_degeneracy_dimension(a).dim >= d.n)
    throw PreconditionError("the presentation I* (x) O -> W* (x) O(1) is not injective");
  if (higher_cohomology_bound(d, 1, 0) != 0 || higher_cohomology_bound(d, 2, -1) != 0)
    throw Error("Ext^2 vanishing check failed: H^1(F_A) or H^2(F_A(-1)) may be nonzero");

  const int v = d.vars();
  const int w = d.width();
  const std::size_t N = static_cast<std::size_t>(w * v);
  ExtDimensions out;
  return with_field(a.field(), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    // Phi in End(W*) acts on f(e_i*) = sum_w f_{i,w} w*; columns: Phi = E_{w2,w1}, then the relations.
    Matrix<F> big(f, 2 * N, static_cast<std::size_t>(w * w) + 4);
    Matrix<F> rel(f, 2 * N, 4);
    for (int i = 0; i < 2; ++i)
      for (int w2 = 0; w2 < w; ++w2)
        for (int w1 = 0; w1 < w; ++w1)
          for (int l = 0; l < v; ++l)
            big(i * N + w2 * v + l, static_cast<std::size_t>(w2 * w + w1)) = f.from_rational(a.coeff(i, w1, l));
    for (int blk = 0; blk < 2; ++blk)
      for (int i = 0; i < 2; ++i)
        for (int ww = 0; ww < w; ++ww)
          for (int l = 0; l < v; ++l) {
            const auto val = f.from_rational(a.coeff(i, ww, l));
            big(blk * N + ww * v + l, static_cast<std::size_t>(w * w + 2 * blk + i)) = val;
            rel(blk * N + ww * v + l, static_cast<std::size_t>(2 * blk + i)) = val;
          }
    const int rank_rel = static_cast<int>(rank(rel));
    const int image = static_cast<int>(rank(big)) - rank_rel;
    out.h0_minus1 = h0_wedge_impl(a, 1, -1);
    out.h0_zero = h0_wedge_impl(a, 1, 0);
    if (out.h0_minus1 != w || out.h0_zero != static_cast<int>(N) - rank_rel / 2)
      throw Error("Ext computation: global sections disagree with the resolution");
    out.hom = w * w - image;
    out.ext1 = 2 * out.h0_zero - image;
    out.ext2 = 0;
    return out;
  });
}

int stabilizer_dimension(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  const int k = d.k, w = d.width(), v = d.vars();
  const std::size_t unknowns = static_cast<std::size_t>(k * k + w * w);
  return with_field(a.field(), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    // Equation (row i*v+l, column c): sum_i2 P[i][i2] A[i2][c][l] - sum_w2 A[i][w2][l] Q[w2][c] = 0.
    Matrix<F> sys(f, static_cast<std::size_t>(k * v * w), unknowns);
    for (int i = 0; i < k; ++i)
      for (int l = 0; l < v; ++l)
        for (int c = 0; c < w; ++c) {
          const std::size_t eq = static_cast<std::size_t>((i * v + l) * w + c);
          for (int i2 = 0; i2 < k; ++i2) sys(eq, static_cast<std::size_t>(i * k + i2)) += f.from_rational(a.coeff(i2, c, l));
          for (int w2 = 0; w2 < w; ++w2)
            sys(eq, static_cast<std::size_t>(k * k + w2 * w + c)) -= f.from_rational(a.coeff(i, w2, l));
        }
    return static_cast<int>(unknowns - rank(sys)) - 1;
  });
}

}  // namespace kronstab
