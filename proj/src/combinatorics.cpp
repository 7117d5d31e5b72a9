#include "kronstab/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace kronstab {

std::uint64_t binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (long i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> subsets_colex(int n, int k) {
  auto out = subsets_lex(n, k);
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

std::vector<std::vector<int>> multisets_lex(int vars, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || vars <= 0) return out;
  std::vector<int> s(size, 0);
  while (true) {
    out.push_back(s);
    int i = size - 1;
    while (i >= 0 && s[i] == vars - 1) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < size; ++j) s[j] = s[i];
  }
  return out;
}

std::vector<std::vector<int>> exponent_vectors(int vars, int degree) {
  std::vector<std::vector<int>> out;
  if (degree < 0 || vars <= 0) return out;
  for (const auto& ms : multisets_lex(vars, degree)) {
    std::vector<int> e(vars, 0);
    for (int i : ms) ++e[i];
    out.push_back(std::move(e));
  }
  return out;
}

MonomialBasis::MonomialBasis(int vars, int degree)
    : vars_(vars), degree_(degree), exponents_(exponent_vectors(vars, degree)) {
  if (vars > 12 || degree > 31) throw std::invalid_argument("monomial basis too large to index");
  index_.reserve(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) index_.emplace(encode(exponents_[i]), i);
}

std::uint64_t MonomialBasis::encode(const std::vector<int>& exps) {
  std::uint64_t code = 0;
  for (int e : exps) code = (code << 5) | static_cast<std::uint64_t>(e);
  return code;
}

long MonomialBasis::index_of(const std::vector<int>& exps) const {
  auto it = index_.find(encode(exps));
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

}  // namespace kronstab
