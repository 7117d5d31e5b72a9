// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Every check is exact; the only numeric limits are the runtime caps, which
// are pinned below next to each criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kronstab/census.hpp"
#include "kronstab/degeneracy.hpp"
#include "kronstab/git_stability.hpp"
#include "kronstab/homology.hpp"
#include "kronstab/random.hpp"

using namespace kronstab;

namespace {

constexpr double kFixtureSeconds = 10;
constexpr double kEquivalenceSeconds = 300;
constexpr double kCensusSeconds = 300;
constexpr double kExtSampleSeconds = 60;
constexpr double kPencilSeconds = 120;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

bool report(int id, const std::string& title, Outcome& o) {
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  (" << o.detail.str() << ")\n";
  for (const auto& f : o.failures) std::cout << "    failed: " << f << "\n";
  return o.pass;
}

// ---------------------------------------------------------------------------
// Polynomials in one variable over Q, low degree first, no trailing zeros.

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

// a = q*b + r.
void divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (deg(a) >= deg(b)) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  r = std::move(a);
}

Poly mod(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return r;
}

Poly monic(Poly p) {
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Inverse of a modulo h when gcd(a, h) = 1.
Poly inverse_mod(const Poly& a, const Poly& h) {
  Poly r0 = h, r1 = mod(a, h), s0, s1{Rational(1)};
  while (deg(r1) > 0) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const Rational c = r1.at(0);
  for (auto& x : s1) x /= c;
  return mod(s1, h);
}

// ---------------------------------------------------------------------------
// Independent pencil oracle for M(a) = U - a V (the point (1:0) is -V).

using QRows = std::vector<std::vector<Rational>>;

int rank_q(QRows m) {
  int r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(r)]);
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[static_cast<std::size_t>(r)][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

Rational det_q(QRows m) {
  Rational d = 1;
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

struct RawPencil {
  QRows U, V;
  std::size_t rows() const { return U.size(); }
  std::size_t cols() const { return U[0].size(); }
  QRows at(const Rational& a) const {
    QRows m = U;
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) m[i][j] -= a * V[i][j];
    return m;
  }
};

// The polynomial of degree <= xs.size()-1 through (x_i, y_i).
Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  Poly out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = mul(basis, Poly{-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    for (auto& c : basis) c *= ys[i] / denom;
    out = sub(out, sub(Poly{}, basis));
  }
  trim(out);
  return out;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Minimum rank over the roots of the squarefree h of a matrix with entries in
// Q[a]/(h). A pivot that is a zero divisor splits h and both halves recurse, so
// every returned rank holds at every root of its factor.
int min_rank_mod(std::vector<std::vector<Poly>> m, const Poly& h) {
  if (deg(h) < 1) return std::numeric_limits<int>::max();
  for (auto& row : m)
    for (auto& e : row) e = mod(e, h);
  int r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < m.size() && m[piv][c].empty()) ++piv;
    if (piv == m.size()) continue;
    const Poly g = gcd(m[piv][c], h);
    if (deg(g) > 0) {
      Poly q, rest;
      divmod(h, g, q, rest);
      return std::min(min_rank_mod(m, g), min_rank_mod(m, monic(q)));
    }
    std::swap(m[piv], m[static_cast<std::size_t>(r)]);
    const auto& prow = m[static_cast<std::size_t>(r)];
    const Poly inv = inverse_mod(prow[c], h);
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < m.size(); ++i) {
      if (m[i][c].empty()) continue;
      const Poly f = mod(mul(m[i][c], inv), h);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = mod(sub(m[i][j], mul(f, prow[j])), h);
    }
    ++r;
  }
  return r;
}

struct OracleRanks {
  int normal_rank = 0;
  int min_rank = 0;
};

OracleRanks pencil_oracle(const RawPencil& p) {
  const int small = static_cast<int>(std::min(p.rows(), p.cols()));
  // The normal rank is attained at one of any small+1 points, since every
  // rank drop is a root of a nonzero minor of degree <= small.
  OracleRanks out;
  for (int x = 0; x <= small; ++x) out.normal_rank = std::max(out.normal_rank, rank_q(p.at(Rational(x))));
  const int r = out.normal_rank;
  out.min_rank = std::min(r, rank_q(p.V));  // (1:0)
  if (r == 0) return out;

  // g = gcd of the r x r minors, each interpolated from r+1 evaluations.
  std::vector<std::vector<int>> row_sets, col_sets;
  std::vector<int> cur;
  subsets(static_cast<int>(p.rows()), r, 0, cur, row_sets);
  subsets(static_cast<int>(p.cols()), r, 0, cur, col_sets);
  std::vector<Rational> xs;
  for (int x = 0; x <= r; ++x) xs.emplace_back(x);
  std::vector<QRows> evaluated;
  for (const auto& x : xs) evaluated.push_back(p.at(x));
  Poly g;
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) {
      std::vector<Rational> ys;
      for (const auto& e : evaluated) {
        QRows minor(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) minor[i][j] = e[static_cast<std::size_t>(rs[i])][static_cast<std::size_t>(cs[j])];
        ys.push_back(det_q(minor));
      }
      g = gcd(g, interpolate(xs, ys));
    }

  // Dense rational evaluation.
  for (int num = -6; num <= 6; ++num)
    for (int den = 1; den <= 3; ++den) out.min_rank = std::min(out.min_rank, rank_q(p.at(Rational(num, den))));
  if (deg(g) < 1) return out;

  // Every root of g, rational or not, through the squarefree part.
  Poly q, rest;
  divmod(g, gcd(g, derivative(g)), q, rest);
  std::vector<std::vector<Poly>> entries(p.rows(), std::vector<Poly>(p.cols()));
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      entries[i][j] = Poly{p.U[i][j], -p.V[i][j]};
      trim(entries[i][j]);
    }
  out.min_rank = std::min(out.min_rank, min_rank_mod(entries, monic(q)));
  return out;
}

RawPencil random_pencil(Rng& rng, std::uint64_t index) {
  const int kind = static_cast<int>(index % 4);
  std::size_t rows = static_cast<std::size_t>(rng.uniform(2, 5));
  std::size_t cols = static_cast<std::size_t>(rng.uniform(2, 6));
  if (kind == 3) cols = rows;
  RawPencil p{QRows(rows, std::vector<Rational>(cols, Rational(0))), QRows(rows, std::vector<Rational>(cols, Rational(0)))};
  auto draw = [&] {
    if (kind == 1 && rng.uniform(0, 9) < 6) return Rational(0);
    return Rational(rng.uniform(-2, 2));
  };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      p.U[i][j] = draw();
      p.V[i][j] = draw();
    }
  if (kind == 2) {
    // U = alpha V + L with rank L small: a drop at the rational point alpha.
    const Rational alpha(rng.uniform(-3, 3), rng.uniform(1, 2));
    const int rho = static_cast<int>(rng.uniform(0, static_cast<long>(std::min(rows, cols)) - 1));
    QRows left(rows, std::vector<Rational>(static_cast<std::size_t>(rho))), right(static_cast<std::size_t>(rho), std::vector<Rational>(cols));
    for (auto& row : left)
      for (auto& x : row) x = rng.uniform(-2, 2);
    for (auto& row : right)
      for (auto& x : row) x = rng.uniform(-2, 2);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        Rational l = 0;
        for (int t = 0; t < rho; ++t) l += left[i][static_cast<std::size_t>(t)] * right[static_cast<std::size_t>(t)][j];
        p.U[i][j] = alpha * p.V[i][j] + l;
      }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Independent d^2 check: second * first as a matrix of quadratic forms.

bool product_vanishes(const LinearFormMatrix& first, const LinearFormMatrix& second) {
  if (second.cols() != first.rows()) return false;
  const int vars = first.vars();
  std::vector<std::vector<std::size_t>> first_nonzero(first.rows());
  for (std::size_t k = 0; k < first.rows(); ++k)
    for (std::size_t j = 0; j < first.cols(); ++j)
      for (int l = 0; l < vars; ++l)
        if (first.at(k, j, l) != 0) {
          first_nonzero[k].push_back(j);
          break;
        }
  for (std::size_t i = 0; i < second.rows(); ++i) {
    std::map<std::size_t, std::vector<Rational>> acc;  // column -> coefficients of x_l x_l'
    for (std::size_t k = 0; k < second.cols(); ++k) {
      bool any = false;
      for (int l = 0; l < vars && !any; ++l) any = second.at(i, k, l) != 0;
      if (!any) continue;
      for (const std::size_t j : first_nonzero[k]) {
        auto& q = acc[j];
        if (q.empty()) q.assign(static_cast<std::size_t>(vars * vars), Rational(0));
        for (int l = 0; l < vars; ++l)
          for (int l2 = 0; l2 < vars; ++l2) {
            const int lo = std::min(l, l2), hi = std::max(l, l2);
            q[static_cast<std::size_t>(lo * vars + hi)] += second.at(i, k, l) * first.at(k, j, l2);
          }
      }
    }
    for (const auto& [j, q] : acc)
      for (const auto& c : q)
        if (c != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Outcome o;
  const auto start = Clock::now();

  const auto remark = remark_fixture();
  const auto rv = git_verdict(remark);
  const auto rf = filtration_indices(remark);
  o.require(rv.status == Status::stable, "remark-s3 GIT stable");
  o.require(exact_degeneracy_dimension(remark).dim == 1, "remark-s3 exact dim D = 1");
  o.require(degeneracy_dimension(remark).dim_estimate == 1, "remark-s3 estimated dim D = 1");
  o.require(rf.tau == 3, "remark-s3 tau = 3");
  o.require(rf.sigma < 3, "remark-s3 sigma < 3");

  const auto boundary = boundary_normal_form(3, 3);
  o.require(git_verdict(boundary).status == Status::stable, "boundary-3-3 GIT stable");
  o.require(3 - exact_degeneracy_dimension(boundary).dim == 2, "boundary-3-3 codim D = 2");
  o.require(hoppe_criterion(boundary).all_zero, "boundary-3-3 Hoppe all-zero");

  const auto k3 = k3_fixture();
  for (std::uint32_t p : {101u, 10007u}) {
    const auto v = git_verdict_probabilistic(k3, p);
    o.require(v.status == Status::stable && v.probabilistic, "k3-counterexample stable at p = " + std::to_string(p));
  }
  const auto k3mu = mu_stability_verdict(k3);
  o.require(k3mu.torsion.torsion && k3mu.torsion.dim_D == 1, "k3-counterexample torsion (dim D = n-1 = 1)");
  o.require(k3mu.verdict != MuVerdict::mu_stable, "k3-counterexample not mu-stable");

  const auto schw = schwarzenberger(3, 3);
  o.require(exact_degeneracy_dimension(schw).dim == -1, "schwarzenberger-3-3 D empty (exact)");
  o.require(degeneracy_dimension(schw).dim_estimate == -1, "schwarzenberger-3-3 D empty (estimate)");
  o.require(mu_stability_verdict(schw).verdict == MuVerdict::mu_stable, "schwarzenberger-3-3 mu-stable");

  const double secs = seconds_since(start);
  o.require(secs < kFixtureSeconds, "runtime under 10 s");
  o.detail << "4 fixtures, " << secs << " s";
  return report(1, "fixture facts", o);
}

bool criterion2() {
  Outcome o;
  const auto start = Clock::now();
  int samples = 0, stable = 0;
  auto judge = [&](const KroneckerMap& a, const std::string& label) {
    const bool git = git_verdict(a).status == Status::stable;
    const bool mu = mu_stability_verdict(a).verdict == MuVerdict::mu_stable;
    ++samples;
    if (git) ++stable;
    o.require(git == mu, label + ": GIT " + (git ? "stable" : "not stable") + ", sheaf " + (mu ? "mu-stable" : "not mu-stable"));
  };
  for (const Dimensions d : {Dimensions{3, 3, 2}, Dimensions{4, 3, 2}, Dimensions{5, 5, 2}})
    for (std::uint64_t s = 1; s <= 50; ++s) judge(random_map(d, s, 2), "random " + d.to_string() + " seed " + std::to_string(s));
  int blocks = 0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    judge(destabilized_block({3, 3, 2}, 1 + static_cast<int>(s % 2), s, 2), "block (3,3) seed " + std::to_string(s));
    judge(destabilized_block({5, 5, 2}, 1 + static_cast<int>(s % 3), s, 2), "block (5,5) seed " + std::to_string(s));
    blocks += 2;
  }
  const double secs = seconds_since(start);
  o.require(secs < kEquivalenceSeconds, "runtime under 5 min");
  o.detail << samples << " samples (" << blocks << " destabilized blocks), " << stable << " stable, " << secs << " s";
  return report(2, "GIT stable iff mu-stable", o);
}

struct CensusRun {
  CensusSummary summary;
  double seconds = 0;
};

CensusRun census_for_criteria() {
  CensusOptions opt;
  opt.n = 3;
  opt.m = 3;
  opt.count = 200;
  opt.seed = 1;
  const auto start = Clock::now();
  CensusRun run;
  run.summary = run_census(opt);
  opt.n = 4;
  opt.count = 50;
  for (auto& r : run_census(opt).records) run.summary.records.push_back(std::move(r));
  run.seconds = seconds_since(start);
  return run;
}

bool has(const CensusRecord& r, const std::string& v) {
  return std::find(r.violations.begin(), r.violations.end(), v) != r.violations.end();
}

bool criterion3(const CensusRun& census) {
  Outcome o;
  int semistable = 0, retested = 0;
  for (const auto& r : census.summary.records) {
    o.require(r.error.empty(), "sample " + r.dims.to_string() + " #" + std::to_string(r.index) + " error: " + r.error);
    if (r.git != "unstable") ++semistable;
    if (r.tau_primes.size() > 1) ++retested;
    o.require(!has(r, "chain") && !has(r, "threshold"),
              "sample " + r.dims.to_string() + " #" + std::to_string(r.index) + " sigma " + std::to_string(r.sigma) + " tau " + std::to_string(r.tau));
  }
  o.require(semistable >= 200, "at least 200 semistable samples");
  o.require(census.seconds < kCensusSeconds, "runtime under 5 min");
  o.detail << census.summary.records.size() << " samples, " << semistable << " semistable, " << retested << " re-tested at a second prime, "
           << census.seconds << " s";
  return report(3, "filtration chain", o);
}

bool criterion4(const CensusRun& census) {
  Outcome o;
  int checked = 0;
  for (const auto& r : census.summary.records) {
    if (r.dims.m % 2 == 0 || r.git != "stable") continue;
    ++checked;
    o.require(2 * (r.dims.n - r.dim_D_exact) >= r.dims.m + 1 && !has(r, "codim"),
              "sample " + r.dims.to_string() + " #" + std::to_string(r.index) + " dim D " + std::to_string(r.dim_D_exact));
  }
  o.require(checked > 0, "some stable odd-m samples");
  o.detail << checked << " stable odd-m samples";
  return report(4, "codimension bound", o);
}

bool criterion5() {
  Outcome o;
  std::vector<std::pair<std::string, KroneckerMap>> samples{{"boundary-3-3", boundary_normal_form(3, 3)},
                                                              {"remark-s3", remark_fixture()},
                                                              {"schwarzenberger-3-3", schwarzenberger(3, 3)},
                                                              {"schwarzenberger-4-3", schwarzenberger(4, 3)},
                                                              {"schwarzenberger-5-5", schwarzenberger(5, 5)}};
  for (std::uint64_t s = 1; s <= 10; ++s) samples.emplace_back("random (3,3) " + std::to_string(s), random_map({3, 3, 2}, s, 2));
  for (std::uint64_t s = 1; s <= 5; ++s) samples.emplace_back("random (4,3) " + std::to_string(s), random_map({4, 3, 2}, s, 2));
  for (std::uint64_t s = 1; s <= 3; ++s) samples.emplace_back("random (5,5) " + std::to_string(s), random_map({5, 5, 2}, s, 2));
  Rng rng(5);
  for (int s = 0; s < 3; ++s)
    samples.emplace_back("boundary orbit " + std::to_string(s),
                         act(random_group_element(rng, {3, 3, 2}, 2, true), boundary_normal_form(3, 3)));
  int simple = 0;
  double slowest = 0;
  for (const auto& [label, a] : samples) {
    const auto start = Clock::now();
    if (git_verdict(a).status != Status::stable) continue;
    const auto e = ext_dimensions(a);
    if (e.hom != 1) continue;
    ++simple;
    const auto& d = a.dims();
    o.require(e.ext1 == (d.m + 2) * (2 * d.n - d.m) - 3, label + ": Ext^1 = " + std::to_string(e.ext1));
    o.require(e.ext2 == 0, label + ": Ext^2 = " + std::to_string(e.ext2));
    o.require(stabilizer_dimension(a) == 0, label + ": stabilizer dimension nonzero");
    if (d.n == 3 && d.m == 3) o.require(e.ext1 == 12, label + ": (3,3) Ext^1 differs from 12");
    const double secs = seconds_since(start);
    slowest = std::max(slowest, secs);
    o.require(secs < kExtSampleSeconds, label + ": over 1 min");
  }
  o.require(simple > 0, "some stable simple samples");
  o.detail << simple << " stable simple samples, slowest " << slowest << " s";
  return report(5, "moduli dimension", o);
}

bool criterion6() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(2024);
  int drops = 0;
  const RationalField q;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const RawPencil raw = random_pencil(rng, i);
    Pencil<RationalField> p{Matrix<RationalField>(q, raw.rows(), raw.cols()), Matrix<RationalField>(q, raw.rows(), raw.cols())};
    for (std::size_t r = 0; r < raw.rows(); ++r)
      for (std::size_t c = 0; c < raw.cols(); ++c) {
        p.U(r, c) = raw.U[r][c];
        p.V(r, c) = raw.V[r][c];
      }
    const auto lib = analyze_pencil(p);
    const auto oracle = pencil_oracle(raw);
    if (oracle.min_rank < oracle.normal_rank) ++drops;
    o.require(lib.normal_rank == oracle.normal_rank && lib.min_rank == oracle.min_rank,
              "pencil " + std::to_string(i) + ": min rank " + std::to_string(lib.min_rank) + " vs " + std::to_string(oracle.min_rank));
  }
  const double secs = seconds_since(start);
  o.require(secs < kPencilSeconds, "runtime under 2 min");
  o.detail << "1000 pencils, " << drops << " with a rank drop, " << secs << " s";
  return report(6, "determinantal divisors vs evaluation", o);
}

bool criterion7(const CensusRun& census) {
  Outcome o;
  std::vector<std::pair<std::string, KroneckerMap>> maps;
  for (int m = 1; m <= 7; ++m) {
    for (std::uint64_t s = 1; s <= 2; ++s) maps.emplace_back("random (4," + std::to_string(m) + ")", random_map({4, m, 2}, 100 * s + static_cast<std::uint64_t>(m), 3));
    if (m % 2 == 1 && m >= 3) maps.emplace_back("boundary m=" + std::to_string(m), boundary_normal_form((m + 1) / 2 + 1, m));
  }
  maps.emplace_back("schwarzenberger-3-3", schwarzenberger(3, 3));
  maps.emplace_back("remark-s3", remark_fixture());
  maps.emplace_back("block (3,3)", destabilized_block({3, 3, 2}, 1, 2, 3));
  int complexes = 0;
  auto verify = [&](const GradedFreeComplex& c, const std::string& label) {
    ++complexes;
    for (std::size_t j = 1; j < c.differentials.size(); ++j)
      o.require(product_vanishes(c.differentials[j - 1], c.differentials[j]), label + " at term " + std::to_string(j));
  };
  for (const auto& [label, a] : maps) {
    const int m = a.dims().m;
    for (int r = 1; r <= std::min(3, m - 1); ++r) verify(build_sel_eis(a, r), label + " sel.eis r=" + std::to_string(r));
    for (int r = 1; r <= std::min(3, (m - 1) / 2); ++r) verify(build_sel(a, r), label + " sel r=" + std::to_string(r));
  }
  int cross = 0;
  for (const auto& r : census.summary.records) {
    cross += r.cross_checks;
    o.require(r.cross_checks_agree && !has(r, "duality"), "census sample #" + std::to_string(r.index) + " dual and direct sides differ");
  }
  o.require(cross > 0, "the census met reflexive cases");
  o.detail << complexes << " complexes with m <= 7, r <= 3; " << cross << " reflexive dual/direct comparisons";
  return report(7, "complex correctness", o);
}

bool criterion8() {
  Outcome o;
  const auto base = boundary_normal_form(3, 3);
  Rng rng(8);
  int reduced = 0;
  for (int t = 0; t < 20; ++t) {
    const auto g = random_group_element(rng, base.dims(), 2, true);
    const auto moved = act(g, base);
    const auto res = normal_form_reduce(moved);
    const bool ok = res.reduced && equal_up_to_column_scaling(res.normal_form, base) && act(res.g, moved) == res.normal_form;
    if (ok) ++reduced;
    o.require(ok, "round trip " + std::to_string(t) + (res.reduced ? "" : ": " + res.reason));
  }
  o.detail << reduced << "/20 round trips";
  return report(8, "normal form round trip", o);
}

}  // namespace

int main() {
  bool all = true;
  auto guarded = [&](int id, const std::function<bool()>& fn) {
    try {
      all = fn() && all;
    } catch (const std::exception& e) {
      std::cout << "criterion " << id << ": FAIL  (exception: " << e.what() << ")\n";
      all = false;
    }
  };
  guarded(1, criterion1);
  guarded(2, criterion2);
  CensusRun census;
  bool census_ok = true;
  try {
    census = census_for_criteria();
  } catch (const std::exception& e) {
    std::cout << "census failed: " << e.what() << "\n";
    census_ok = false;
  }
  guarded(3, [&] { return census_ok && criterion3(census); });
  guarded(4, [&] { return census_ok && criterion4(census); });
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, [&] { return census_ok && criterion7(census); });
  guarded(8, criterion8);
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return all ? 0 : 1;
}
