#include "kronstab/model.hpp"

#include <algorithm>
#include <charconv>

#include "kronstab/random.hpp"

namespace kronstab {

void Dimensions::validate() const {
  if (k < 2) throw PreconditionError("dimensions: k must be at least 2");
  if (n < 2) throw PreconditionError("dimensions: n must be at least 2");
  if (m < 1) throw PreconditionError("dimensions: m must be at least 1");
  if (m + k > k * (n + 1)) throw PreconditionError("dimensions: m+k must not exceed k(n+1)");
  if (n + 1 > 12) throw PreconditionError("dimensions: at most 12 variables are supported");
}

std::string Dimensions::to_string() const {
  return "(n=" + std::to_string(n) + ", m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")";
}

KroneckerMap::KroneckerMap(Dimensions dims, FieldSpec field)
    : dims_(dims), field_(field), c_(static_cast<std::size_t>(dims.k * dims.width() * dims.vars())) {
  dims_.validate();
}

void KroneckerMap::set(int i, int w, int l, const Rational& value) {
  if (field_.is_rational()) {
    c_[index(i, w, l)] = value;
  } else {
    c_[index(i, w, l)] = PrimeField{field_.p}.to_rational(PrimeField{field_.p}.from_rational(value));
  }
}

bool KroneckerMap::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return kronstab::is_zero(x); });
}

bool KroneckerMap::is_injective() const {
  return with_field(field_, [&](const auto& f) { return rank(flattening(f)) == static_cast<std::size_t>(dims_.width()); });
}

void check_reduction(const KroneckerMap& a, std::uint32_t p) {
  if (!a.field().is_rational()) {
    if (a.field().p != p)
      throw PreconditionError("map over " + a.field().name() + " cannot be reduced modulo " + std::to_string(p));
    return;
  }
  const Dimensions& d = a.dims();
  for (int i = 0; i < d.k; ++i)
    for (int w = 0; w < d.width(); ++w)
      for (int l = 0; l < d.vars(); ++l)
        if (mpz_divisible_ui_p(a.coeff(i, w, l).get_den().get_mpz_t(), p)) throw BadReduction();
}

GroupElement GroupElement::identity(const Dimensions& d, bool with_s) {
  GroupElement g{Matrix<RationalField>::identity({}, static_cast<std::size_t>(d.k)),
                 Matrix<RationalField>::identity({}, static_cast<std::size_t>(d.width())), std::nullopt};
  if (with_s) g.S = Matrix<RationalField>::identity({}, static_cast<std::size_t>(d.vars()));
  return g;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  GroupElement out{g.P * h.P, g.Q * h.Q, std::nullopt};
  if (g.S || h.S) {
    const std::size_t size = g.S ? g.S->rows() : h.S->rows();
    const auto id = Matrix<RationalField>::identity({}, size);
    out.S = (g.S ? *g.S : id) * (h.S ? *h.S : id);
  }
  return out;
}

KroneckerMap act(const GroupElement& g, const KroneckerMap& a) {
  const Dimensions& d = a.dims();
  const auto k = static_cast<std::size_t>(d.k);
  const auto w = static_cast<std::size_t>(d.width());
  const auto v = static_cast<std::size_t>(d.vars());
  if (g.P.rows() != k || g.P.cols() != k || g.Q.rows() != w || g.Q.cols() != w)
    throw PreconditionError("group element does not match the map's dimensions");
  if (g.S && (g.S->rows() != v || g.S->cols() != v))
    throw PreconditionError("group element does not match the map's dimensions");
  auto qinv = inverse(g.Q);
  if (!qinv || is_zero(determinant(g.P)) || (g.S && is_zero(determinant(*g.S))))
    throw PreconditionError("group element is singular");
  const Matrix<RationalField> S = g.S ? *g.S : Matrix<RationalField>::identity({}, v);

  // c'[i'][w][l'] = sum P[i'][i] S[l'][l] Qinv[w'][w] c[i][w'][l], done one factor at a time.
  std::vector<Rational> step1(k * w * v), step2(k * w * v);
  auto at = [&](std::size_t i, std::size_t col, std::size_t l) { return (i * w + col) * v + l; };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t col = 0; col < w; ++col)
      for (std::size_t l = 0; l < v; ++l) {
        Rational acc = 0;
        for (std::size_t c2 = 0; c2 < w; ++c2)
          if (!is_zero((*qinv)(c2, col))) acc += (*qinv)(c2, col) * a.coeff(static_cast<int>(i), static_cast<int>(c2), static_cast<int>(l));
        step1[at(i, col, l)] = acc;
      }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t col = 0; col < w; ++col)
      for (std::size_t l = 0; l < v; ++l) {
        Rational acc = 0;
        for (std::size_t l2 = 0; l2 < v; ++l2)
          if (!is_zero(S(l, l2))) acc += S(l, l2) * step1[at(i, col, l2)];
        step2[at(i, col, l)] = acc;
      }
  KroneckerMap out(d, a.field());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t col = 0; col < w; ++col)
      for (std::size_t l = 0; l < v; ++l) {
        Rational acc = 0;
        for (std::size_t i2 = 0; i2 < k; ++i2)
          if (!is_zero(g.P(i, i2))) acc += g.P(i, i2) * step2[at(i2, col, l)];
        out.set(static_cast<int>(i), static_cast<int>(col), static_cast<int>(l), acc);
      }
  return out;
}

Matrix<RationalField> random_invertible(Rng& rng, std::size_t size, long bound) {
  while (true) {
    Matrix<RationalField> m({}, size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m(i, j) = rng.uniform(-bound, bound);
    if (rank(m) == size) return m;
  }
}

GroupElement random_group_element(Rng& rng, const Dimensions& d, long bound, bool with_s) {
  GroupElement g{random_invertible(rng, static_cast<std::size_t>(d.k), bound),
                 random_invertible(rng, static_cast<std::size_t>(d.width()), bound), std::nullopt};
  if (with_s) g.S = random_invertible(rng, static_cast<std::size_t>(d.vars()), bound);
  return g;
}

KroneckerMap random_map(const Dimensions& dims, std::uint64_t seed, long bound, FieldSpec field) {
  KroneckerMap a(dims, field);
  Rng rng(seed);
  for (int i = 0; i < dims.k; ++i)
    for (int w = 0; w < dims.width(); ++w)
      for (int l = 0; l < dims.vars(); ++l) a.set(i, w, l, Rational(rng.uniform(-bound, bound)));
  return a;
}

KroneckerMap destabilized_block(const Dimensions& dims, int s, std::uint64_t seed, long bound) {
  if (dims.k != 2 || s < 1 || s > dims.width()) throw PreconditionError("destabilized block: needs k = 2 and 1 <= s <= m+2");
  KroneckerMap a = random_map(dims, seed, bound);
  for (int w = s; w < dims.width(); ++w)
    for (int l = 0; l < dims.vars(); ++l) a.set(0, w, l, Rational(0));
  return a;
}

KroneckerMap schwarzenberger(int n, int m) {
  if (m + 2 > 2 * (n + 1)) throw PreconditionError("schwarzenberger: needs m+2 <= 2(n+1)");
  if (n > m + 1) throw PreconditionError("schwarzenberger: needs n <= m+1 so a row of x_0..x_n fits");
  KroneckerMap a({n, m, 2}, FieldSpec::rationals());
  const int shift = m + 1 - n;
  for (int l = 0; l <= n; ++l) {
    a.set_variable(0, l, l);
    a.set_variable(1, shift + l, l);
  }
  return a;
}

KroneckerMap boundary_normal_form(int n, int m) {
  if (m % 2 == 0) throw PreconditionError("boundary normal form: m must be odd");
  const int t = (m + 1) / 2;
  if (n < t + 1) throw PreconditionError("boundary normal form: needs n >= (m+1)/2 + 1");
  KroneckerMap a({n, m, 2}, FieldSpec::rationals());
  for (int l = 0; l < t; ++l) {
    a.set_variable(0, l, l);
    a.set_variable(1, t + l, l);
  }
  a.set_variable(0, 2 * t, t);
  a.set_variable(1, 2 * t, t + 1);
  return a;
}

KroneckerMap remark_fixture() {
  KroneckerMap a({3, 3, 2}, FieldSpec::rationals());
  a.set_variable(0, 2, 0);
  a.set_variable(0, 3, 1);
  a.set_variable(0, 4, 2);
  a.set_variable(1, 0, 0);
  a.set_variable(1, 1, 1);
  a.set_variable(1, 4, 3);
  return a;
}

KroneckerMap k3_fixture() {
  KroneckerMap a({2, 2, 3}, FieldSpec::rationals());
  a.set_variable(0, 0, 1);
  a.set_variable(0, 1, 0);
  a.set_variable(1, 1, 2);
  a.set_variable(1, 2, 1);
  a.set_variable(1, 3, 0);
  a.set_variable(2, 3, 2);
  a.set_variable(2, 4, 1);
  return a;
}

std::vector<std::string> fixture_families() {
  return {"remark-s3", "k3-counterexample", "schwarzenberger-N-M", "boundary-N-M"};
}

namespace {

// Parses "<prefix>N-M" into (N, M).
bool parse_pair(const std::string& id, const std::string& prefix, int& n, int& m) {
  if (id.rfind(prefix, 0) != 0) return false;
  const std::string rest = id.substr(prefix.size());
  const auto dash = rest.find('-');
  if (dash == std::string::npos) return false;
  const char* b = rest.data();
  auto r1 = std::from_chars(b, b + dash, n);
  auto r2 = std::from_chars(b + dash + 1, b + rest.size(), m);
  return r1.ec == std::errc() && r1.ptr == b + dash && r2.ec == std::errc() && r2.ptr == b + rest.size();
}

}  // namespace

KroneckerMap fixture(const std::string& id) {
  if (id == "remark-s3") return remark_fixture();
  if (id == "k3-counterexample") return k3_fixture();
  int n = 0, m = 0;
  if (parse_pair(id, "schwarzenberger-", n, m)) return schwarzenberger(n, m);
  if (parse_pair(id, "boundary-", n, m)) return boundary_normal_form(n, m);
  throw PreconditionError("unknown fixture '" + id + "'");
}

}  // namespace kronstab
