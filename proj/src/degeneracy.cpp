#include "kronstab/degeneracy.hpp"

#include <algorithm>
#include <cmath>

#include "kronstab/binary_form.hpp"
#include "kronstab/random.hpp"

namespace kronstab {

std::size_t rank_at_point(const KroneckerMap& a, const std::vector<Rational>& x) {
  if (x.size() != static_cast<std::size_t>(a.dims().vars())) throw PreconditionError("point has the wrong number of coordinates");
  if (std::all_of(x.begin(), x.end(), [](const Rational& c) { return is_zero(c); }))
    throw PreconditionError("the zero vector is not a projective point");
  return with_field(a.field(), [&](const auto& f) {
    std::vector<typename std::decay_t<decltype(f)>::Element> v;
    for (const auto& c : x) v.push_back(f.from_rational(c));
    return rank(a.evaluate(f, v));
  });
}

std::size_t rank_at_point(const KroneckerMap& a, const PrimeField& f, const std::vector<Zp>& x) {
  return rank(a.evaluate(f, x));
}

int tau_from_dimension(int dim) { return std::max(1, dim + 2); }

int rank_zero_locus_dimension(const KroneckerMap& a) {
  return with_field(a.field(), [&](const auto& f) {
    const Dimensions& d = a.dims();
    using F = std::decay_t<decltype(f)>;
    Matrix<F> all(f, static_cast<std::size_t>(d.k * d.width()), static_cast<std::size_t>(d.vars()));
    for (int i = 0; i < d.k; ++i)
      for (int w = 0; w < d.width(); ++w)
        for (int l = 0; l < d.vars(); ++l) all(i * d.width() + w, l) = f.from_rational(a.coeff(i, w, l));
    return d.n - static_cast<int>(rank(all));
  });
}

namespace {

class DegeneracyTester {
 public:
  DegeneracyTester(int k, int width, std::uint32_t p) : k_(k), width_(width), p_(p), buf_(static_cast<std::size_t>(k * width)) {}

  // rank < k for the k x width matrix stored row-major in m.
  bool degenerate(const std::vector<std::uint32_t>& m) {
    if (k_ == 2) {
      const std::uint32_t* r0 = m.data();
      const std::uint32_t* r1 = m.data() + width_;
      int pivot = 0;
      while (pivot < width_ && r0[pivot] == 0) ++pivot;
      if (pivot == width_) return true;
      const std::uint64_t a = r0[pivot], b = r1[pivot];
      for (int w = 0; w < width_; ++w)
        if ((r1[w] * a) % p_ != (b * r0[w]) % p_) return false;
      return true;
    }
    std::copy(m.begin(), m.end(), buf_.begin());
    int r = 0;
    for (int c = 0; c < width_ && r < k_; ++c) {
      int piv = r;
      while (piv < k_ && buf_[static_cast<std::size_t>(piv * width_ + c)] == 0) ++piv;
      if (piv == k_) continue;
      for (int j = 0; j < width_; ++j) std::swap(buf_[static_cast<std::size_t>(piv * width_ + j)], buf_[static_cast<std::size_t>(r * width_ + j)]);
      const std::uint64_t inv = Zp(buf_[static_cast<std::size_t>(r * width_ + c)], p_).inverse().value();
      for (int i = r + 1; i < k_; ++i) {
        const std::uint64_t lead = buf_[static_cast<std::size_t>(i * width_ + c)];
        if (lead == 0) continue;
        const std::uint64_t f = lead * inv % p_;
        for (int j = c; j < width_; ++j) {
          auto& x = buf_[static_cast<std::size_t>(i * width_ + j)];
          x = static_cast<std::uint32_t>((x + p_ - f * buf_[static_cast<std::size_t>(r * width_ + j)] % p_) % p_);
        }
      }
      ++r;
    }
    return r < k_;
  }

 private:
  int k_;
  int width_;
  std::uint64_t p_;
  std::vector<std::uint32_t> buf_;
};

// Visits every point of P^e given the evaluated matrices of a basis
// (slices[j] = A(b_j), flattened). The running matrix is updated by adding
// one slice per odometer step, since bumping coordinate j by one (mod p,
// including the wrap to zero) adds slices[j].
template <class Fn>
void for_each_point(const std::vector<std::vector<std::uint32_t>>& slices, std::uint32_t p, Fn&& fn) {
  const int e = static_cast<int>(slices.size()) - 1;
  const std::size_t len = slices.front().size();
  std::vector<std::uint32_t> cur(len);
  std::vector<std::uint32_t> y(slices.size());
  auto add = [&](int j) {
    const auto& s = slices[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < len; ++i) {
      std::uint32_t x = cur[i] + s[i];
      cur[i] = x >= p ? x - p : x;
    }
  };
  for (int lead = 0; lead <= e; ++lead) {
    std::fill(y.begin(), y.end(), 0);
    y[static_cast<std::size_t>(lead)] = 1;
    cur = slices[static_cast<std::size_t>(lead)];
    while (true) {
      fn(y, cur);
      int j = lead + 1;
      while (j <= e) {
        add(j);
        if (++y[static_cast<std::size_t>(j)] == p) {
          y[static_cast<std::size_t>(j)] = 0;
          ++j;
        } else {
          break;
        }
      }
      if (j > e) break;
    }
  }
}

std::vector<std::uint32_t> flatten(const Matrix<PrimeField>& m) {
  std::vector<std::uint32_t> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j).value());
  return out;
}

// Evaluated matrices A(b_j) for the columns b_j of a basis matrix.
std::vector<std::vector<std::uint32_t>> basis_slices(const KroneckerMap& a, const PrimeField& f, const Matrix<PrimeField>& basis) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    std::vector<Zp> x;
    for (std::size_t r = 0; r < basis.rows(); ++r) x.push_back(basis(r, j));
    out.push_back(flatten(a.evaluate(f, x)));
  }
  return out;
}

double points_of(std::uint32_t p, int e) {
  double s = 0, q = 1;
  for (int i = 0; i <= e; ++i, q *= p) s += q;
  return s;
}

// Trial estimate from the counts at codimensions 0..n (counts[d] for L_d).
int estimate_from_counts(const std::vector<std::uint64_t>& counts, std::uint32_t p) {
  const double threshold = p / 2.0;
  for (int d = static_cast<int>(counts.size()) - 1; d >= 0; --d)
    if (static_cast<double>(counts[static_cast<std::size_t>(d)]) >= threshold) return d + 1;
  return counts.front() > 0 ? 0 : -1;
}

Matrix<PrimeField> random_hyperplanes(const PrimeField& f, int count, int vars, Rng& rng) {
  Matrix<PrimeField> h(f, static_cast<std::size_t>(count), static_cast<std::size_t>(vars));
  for (int i = 0; i < count; ++i)
    for (int l = 0; l < vars; ++l) h(static_cast<std::size_t>(i), static_cast<std::size_t>(l)) = Zp(static_cast<std::uint32_t>(rng.below(f.p)), f.p);
  return h;
}

Matrix<PrimeField> first_rows(const Matrix<PrimeField>& h, std::size_t d) {
  Matrix<PrimeField> out(h.field(), d, h.cols());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

}  // namespace

DegeneracyReport degeneracy_dimension(const KroneckerMap& a, const DegeneracyOptions& options) {
  const Dimensions& d = a.dims();
  DegeneracyReport rep;
  rep.prime = options.prime;
  if (!a.field().is_rational() && a.field().p != options.prime) {
    rep.prime = a.field().p;
    rep.warnings.push_back("map is defined over " + a.field().name() + "; using its own prime");
  }
  if (!is_prime(rep.prime)) throw PreconditionError(std::to_string(rep.prime) + " is not prime");
  check_reduction(a, rep.prime);
  const PrimeField f{rep.prime};
  rep.trials = std::max(1, options.trials);
  rep.seed = options.seed;
  rep.dim_D0 = rank_zero_locus_dimension(a);
  if (rep.prime < static_cast<std::uint32_t>(2 * d.width()))
    rep.warnings.push_back("prime " + std::to_string(rep.prime) + " is below twice the degree bound " +
                           std::to_string(2 * d.width()) + "; estimates are unreliable");

  DegeneracyStrategy strategy = options.strategy;
  if (strategy == DegeneracyStrategy::automatic)
    strategy = (d.n <= 4 && rep.prime <= 31) ? DegeneracyStrategy::enumeration : DegeneracyStrategy::slicing;
  rep.method = strategy == DegeneracyStrategy::enumeration ? "enumeration" : "slicing";

  constexpr double kPointCap = 4e8;
  DegeneracyTester tester(d.k, d.width(), rep.prime);
  Rng rng(options.seed);
  const auto identity = Matrix<PrimeField>::identity(f, static_cast<std::size_t>(d.vars()));

  if (strategy == DegeneracyStrategy::enumeration) {
    if (points_of(rep.prime, d.n) > kPointCap) throw Error("enumeration of P^n(F_p) is too large; choose a smaller prime");
    std::vector<std::vector<std::uint32_t>> found;
    for_each_point(basis_slices(a, f, identity), rep.prime, [&](const std::vector<std::uint32_t>& y, const std::vector<std::uint32_t>& m) {
      if (tester.degenerate(m)) found.push_back(y);
    });
    rep.point_count = found.size();
    for (int t = 0; t < rep.trials; ++t) {
      const auto h = random_hyperplanes(f, d.n, d.vars(), rng);
      // depth[x] = number of leading hyperplanes through x.
      std::vector<std::uint64_t> counts(static_cast<std::size_t>(d.n + 1), 0);
      for (const auto& x : found) {
        int depth = 0;
        while (depth < d.n) {
          std::uint64_t s = 0;
          for (int l = 0; l < d.vars(); ++l)
            s = (s + static_cast<std::uint64_t>(h(static_cast<std::size_t>(depth), static_cast<std::size_t>(l)).value()) *
                         x[static_cast<std::size_t>(l)]) % rep.prime;
          if (s != 0) break;
          ++depth;
        }
        for (int c = 0; c <= depth; ++c) ++counts[static_cast<std::size_t>(c)];
      }
      for (int c = 0; c <= d.n; ++c) rep.transcript.push_back({t, c, counts[static_cast<std::size_t>(c)]});
      rep.trial_estimates.push_back(estimate_from_counts(counts, rep.prime));
    }
  } else {
    std::optional<std::uint64_t> whole;  // level 0 is the same in every trial
    for (int t = 0; t < rep.trials; ++t) {
      const auto h = random_hyperplanes(f, d.n, d.vars(), rng);
      std::vector<std::uint64_t> counts(static_cast<std::size_t>(d.n + 1), 0);
      int estimate = -2;
      for (int c = d.n; c >= 0 && estimate == -2; --c) {
        std::uint64_t count = 0;
        if (c == 0 && whole) {
          count = *whole;
        } else {
          const auto basis = kernel_basis(first_rows(h, static_cast<std::size_t>(c)));
          const int e = static_cast<int>(basis.cols()) - 1;
          if (e < 0) continue;
          if (points_of(rep.prime, e) > kPointCap) throw Error("slice enumeration over F_p is too large; choose a smaller prime");
          for_each_point(basis_slices(a, f, basis), rep.prime, [&](const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>& m) {
            if (tester.degenerate(m)) ++count;
          });
          if (c == 0) whole = count;
        }
        counts[static_cast<std::size_t>(c)] = count;
        rep.transcript.push_back({t, c, count});
        if (static_cast<double>(count) >= rep.prime / 2.0) estimate = c + 1;
        else if (c == 0) estimate = count > 0 ? 0 : -1;
      }
      rep.trial_estimates.push_back(estimate);
    }
    if (whole) rep.point_count = whole;
  }
  auto sorted = rep.trial_estimates;
  std::sort(sorted.begin(), sorted.end());
  rep.dim_estimate = std::min(sorted[(sorted.size() - 1) / 2], d.n);
  rep.tau = tau_from_dimension(rep.dim_estimate);
  return rep;
}

ExactDegeneracy exact_degeneracy_dimension(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  if (d.k != 2) throw PreconditionError("exact degeneracy dimension needs k = 2");
  return with_field(a.field(), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    Pencil<F> pencil{a.row_coefficients(f, 0), a.row_coefficients(f, 1)};
    const auto analysis = analyze_pencil(pencil);
    Matrix<F> both(f, pencil.rows(), 2 * pencil.cols());
    for (std::size_t i = 0; i < pencil.rows(); ++i)
      for (std::size_t j = 0; j < pencil.cols(); ++j) {
        both(i, j) = pencil.U(i, j);
        both(i, pencil.cols() + j) = pencil.V(i, j);
      }
    ExactDegeneracy out;
    out.normal_rank = analysis.normal_rank;
    out.min_rank = analysis.min_rank;
    out.common_kernel_dim = d.vars() - static_cast<int>(rank(both));
    const int special = d.n - analysis.min_rank;
    const int generic = (d.vars() - analysis.normal_rank > out.common_kernel_dim) ? d.n - analysis.normal_rank + 1 : -1;
    out.dim = std::max({special, generic, -1});
    return out;
  });
}

namespace {

std::uint32_t next_prime(std::uint32_t p) {
  do ++p;
  while (!is_prime(p));
  return p;
}

}  // namespace

FiltrationReport filtration_indices(const KroneckerMap& a, const DegeneracyOptions& options, int max_primes) {
  if (a.dims().k != 2) throw PreconditionError("filtration indices need k = 2");
  FiltrationReport rep;
  const auto verdict = git_verdict(a);
  rep.status = verdict.status;
  rep.sigma = verdict.sigma;
  rep.outside_semistable = verdict.status == Status::unstable;
  rep.exact_tau = tau_from_dimension(exact_degeneracy_dimension(a).dim);

  auto judge = [&] {
    rep.tau = tau_from_dimension(rep.dim_estimate);
    rep.chain_holds = rep.sigma <= rep.tau && rep.tau <= rep.sigma + 1;
    rep.threshold_holds = (rep.sigma >= 2) == (rep.tau >= 2);
  };
  DegeneracyOptions opt = options;
  rep.dim_estimate = -1;
  const bool fixed_field = !a.field().is_rational();
  for (int attempt = 0; attempt < std::max(1, max_primes); ++attempt) {
    while (true) {
      try {
        const auto deg = degeneracy_dimension(a, opt);
        rep.primes.push_back(deg.prime);
        rep.dim_estimate = deg.dim_estimate;
        break;
      } catch (const BadReduction&) {
        opt.prime = next_prime(opt.prime);
      }
    }
    judge();
    if ((rep.chain_holds && rep.threshold_holds) || fixed_field) break;
    opt.prime = next_prime(opt.prime);
  }
  return rep;
}

namespace {

using QMat = Matrix<RationalField>;

QMat column(const QMat& m, std::size_t j) { return m.columns(j, 1); }

QMat hstack(const std::vector<QMat>& parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) cols += p.cols();
  QMat out({}, parts.front().rows(), cols);
  std::size_t at = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, at + j) = p(i, j);
    at += p.cols();
  }
  return out;
}

// Extends independent columns to a basis by appending standard basis vectors.
QMat complete_basis(const QMat& cols) {
  QMat cur = cols;
  for (std::size_t e = 0; e < cols.rows() && cur.cols() < cols.rows(); ++e) {
    QMat unit({}, cols.rows(), 1);
    unit(e, 0) = 1;
    QMat trial = hstack({cur, unit});
    if (rank(trial) == trial.cols()) cur = trial;
  }
  return cur;
}

NormalFormResult not_boundary(std::string reason) {
  NormalFormResult r;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

namespace {

// Carries A to the normal form using omega_1 = (a1:b1) and omega_2 = (a2:b2),
// both of nullity t, or names the condition that fails.
NormalFormResult reduce_with(const KroneckerMap& a, const Rational& a1, const Rational& b1, const Rational& a2,
                             const Rational& b2) {
  const Dimensions& d = a.dims();
  const int t = (d.m + 1) / 2;
  const RationalField q;

  // P sends omega_1, omega_2 to e_0, e_1.
  QMat omega({}, 2, 2);
  omega(0, 0) = a1;
  omega(1, 0) = b1;
  omega(0, 1) = a2;
  omega(1, 1) = b2;
  const auto omega_inv = inverse(omega);
  if (!omega_inv) return not_boundary("not boundary: the two omegas coincide");
  const QMat P = *omega_inv;

  GroupElement step{P, QMat::identity(q, static_cast<std::size_t>(d.width())), std::nullopt};
  const KroneckerMap b = act(step, a);
  const QMat U = b.row_coefficients(q, 0);
  const QMat V = b.row_coefficients(q, 1);
  const QMat K1 = kernel_basis(V);  // A(w) in omega_1 (x) V
  QMat K2 = kernel_basis(U);        // A(w) in omega_2 (x) V
  if (K1.cols() != static_cast<std::size_t>(t) || K2.cols() != static_cast<std::size_t>(t))
    return not_boundary("not boundary: the two omegas do not both have nullity t");
  const QMat f = U * K1;  // columns f_0..f_{t-1}
  QMat gcols = V * K2;    // columns g_0..g_{t-1}
  if (rank(hstack({f, gcols})) != static_cast<std::size_t>(t))
    return not_boundary("not boundary: <f_0..f_{t-1}> differs from <g_0..g_{t-1}>");

  // Rebase K2 so that g_i = f_i: solve gcols * T = f.
  QMat red = hstack({gcols, f});
  rref(red);
  QMat T({}, static_cast<std::size_t>(t), static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) T(i, j) = red(i, t + j);
  K2 = K2 * T;
  gcols = V * K2;
  if (!(gcols == f)) throw Error("internal: kernel rebasing failed");

  // Complete K1 + K2 by one W vector lambda.
  const QMat both = hstack({K1, K2});
  if (rank(both) != static_cast<std::size_t>(2 * t)) return not_boundary("not boundary: the two kernels intersect");
  const QMat lambda = column(complete_basis(both), static_cast<std::size_t>(2 * t));
  const QMat forms_used = hstack({f, U * lambda, V * lambda});
  if (rank(forms_used) != static_cast<std::size_t>(t + 2))
    return not_boundary("not boundary: f_0..f_t, g_t are linearly dependent");

  const QMat S = *inverse(complete_basis(forms_used));
  const QMat Q = *inverse(hstack({K1, K2, lambda}));
  NormalFormResult out;
  out.g = GroupElement{P, Q, S};
  out.normal_form = act(out.g, a);
  if (!(out.normal_form == boundary_normal_form(d.n, d.m))) throw Error("internal: reduction did not reach the normal form");
  out.reduced = true;
  return out;
}

}  // namespace

NormalFormResult normal_form_reduce(const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  if (d.k != 2 || d.m % 2 == 0) throw PreconditionError("normal form reduction needs k = 2 and m odd");
  if (!a.field().is_rational()) throw PreconditionError("normal form reduction works over Q");
  const int t = (d.m + 1) / 2;
  const auto verdict = git_verdict(a);
  if (verdict.status != Status::stable) return not_boundary("not boundary: the map is not stable");
  if (d.n < t + 1) return not_boundary("not boundary: n < (m+1)/2 + 1 leaves no room for the normal form");
  const auto& pa = *verdict.pencil;
  if (pa.max_nullity != t)
    return not_boundary("not boundary: maximal nullity " + std::to_string(pa.max_nullity) + " differs from t = " + std::to_string(t));

  std::vector<std::pair<Rational, Rational>> candidates;
  if (pa.min_rank == pa.normal_rank) {
    // Every omega has nullity t; any two distinct rational ones may serve.
    candidates = {{0, 1}, {1, 0}, {1, 1}, {-1, 1}, {2, 1}, {1, 2}};
  } else {
    // The omegas of nullity t are the roots of g_{min_rank+1}.
    const RationalField q;
    const auto pencil = pencil_of(a, q);
    FormMatrix<RationalField> forms(pencil.rows(), std::vector<BinaryForm<RationalField>>(pencil.cols()));
    for (std::size_t i = 0; i < pencil.rows(); ++i)
      for (std::size_t j = 0; j < pencil.cols(); ++j) forms[i][j] = BinaryForm<RationalField>::linear(q, pencil.U(i, j), pencil.V(i, j));
    MinorLadder<RationalField> ladder(q, forms);
    std::vector<BinaryForm<RationalField>> level;
    for (int j = 0; j <= pa.min_rank; ++j) level = ladder.next();
    const auto roots = projective_roots(q, gcd_of_forms(q, level));
    if (roots.points.size() < 2) {
      if (univariate::degree(roots.residual) > 1) throw Error("reduction requires field extension");
      return not_boundary("not boundary: fewer than two omegas attain nullity t");
    }
    for (const auto& [x, y] : roots.points) candidates.emplace_back(x, y);
  }

  NormalFormResult last = not_boundary("not boundary: no pair of omegas works");
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      last = reduce_with(a, candidates[i].first, candidates[i].second, candidates[j].first, candidates[j].second);
      if (last.reduced) return last;
    }
  return last;
}

bool equal_up_to_column_scaling(const KroneckerMap& a, const KroneckerMap& b) {
  if (!(a.dims() == b.dims())) return false;
  const Dimensions& d = a.dims();
  for (int w = 0; w < d.width(); ++w) {
    std::optional<Rational> ratio;
    for (int i = 0; i < d.k; ++i)
      for (int l = 0; l < d.vars(); ++l) {
        const Rational& x = a.coeff(i, w, l);
        const Rational& y = b.coeff(i, w, l);
        if (is_zero(x) != is_zero(y)) return false;
        if (is_zero(x)) continue;
        const Rational r = y / x;
        if (ratio && *ratio != r) return false;
        ratio = r;
      }
  }
  return true;
}

}  // namespace kronstab
