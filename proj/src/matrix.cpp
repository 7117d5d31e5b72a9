#include "kronstab/matrix.hpp"

#include <cstdint>

namespace kronstab {

namespace {

// Scales every row by the lcm of its denominators; the rank is unchanged.
std::vector<std::vector<Integer>> integer_rows(const Matrix<RationalField>& m) {
  std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& d = m(i, j).get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      rows[i][j] = x.get_num() * (l / x.get_den());
    }
  }
  return rows;
}

std::size_t bareiss_rank(std::vector<std::vector<Integer>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  Integer t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Integer pivot = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // a[i][j] = (pivot * a[i][j] - lead * a[r][j]) / prev, exact.
        t = pivot * a[i][j];
        t -= lead * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

std::size_t gauss_rank_mod(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t inv = Zp(a[r * cols + c], p).inverse().value();
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint32_t lead = a[i * cols + c];
      if (lead == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>(lead) * inv % p;
      for (std::size_t j = c; j < cols; ++j) {
        std::uint64_t sub = f * a[r * cols + j] % p;
        std::uint32_t& x = a[i * cols + j];
        x = static_cast<std::uint32_t>((x + p - sub) % p);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const Matrix<RationalField>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return bareiss_rank(integer_rows(m), m.cols());
}

std::size_t rank(const Matrix<PrimeField>& m) {
  const std::uint32_t p = m.field().p;
  std::vector<std::uint32_t> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m(i, j).value();
  return gauss_rank_mod(a, m.rows(), m.cols(), p);
}

std::size_t rank_with_modular_shortcut(const Matrix<RationalField>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  constexpr std::uint32_t kShortcutPrime = 2147483647u;
  auto rows = integer_rows(m);
  const Integer pz(static_cast<unsigned long>(kShortcutPrime));
  std::vector<std::uint32_t> a(m.rows() * m.cols());
  Integer r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_fdiv_r(r.get_mpz_t(), rows[i][j].get_mpz_t(), pz.get_mpz_t());
      a[i * m.cols() + j] = static_cast<std::uint32_t>(r.get_ui());
    }
  const std::size_t full = std::min(m.rows(), m.cols());
  if (gauss_rank_mod(a, m.rows(), m.cols(), kShortcutPrime) == full) return full;
  return bareiss_rank(std::move(rows), m.cols());
}

}  // namespace kronstab
