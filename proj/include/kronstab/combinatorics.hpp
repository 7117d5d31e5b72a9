#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace kronstab {

/// binom(n, k); zero outside 0 <= k <= n.
std::uint64_t binomial(long n, long k);

/// k-subsets of {0..n-1} as sorted index lists, lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int k);

/// k-subsets of {0..n-1}, colexicographic order (compare largest element first).
std::vector<std::vector<int>> subsets_colex(int n, int k);

/// Exponent vectors of total degree `degree` in `vars` variables, listed in
/// the order of the corresponding multisets (see multisets_lex), so x0^d first.
std::vector<std::vector<int>> exponent_vectors(int vars, int degree);

/// Symmetric multi-indices: non-decreasing index sequences i1 <= ... <= is
/// over {0..vars-1}, lexicographic.
std::vector<std::vector<int>> multisets_lex(int vars, int size);

/// Bijection between monomials of a fixed degree and [0, size).
class MonomialBasis {
 public:
  MonomialBasis(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return exponents_.size(); }
  const std::vector<int>& exponent(std::size_t index) const { return exponents_[index]; }
  /// Index of an exponent vector of the right degree; -1 if absent.
  long index_of(const std::vector<int>& exps) const;

 private:
  static std::uint64_t encode(const std::vector<int>& exps);
  int vars_;
  int degree_;
  std::vector<std::vector<int>> exponents_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace kronstab
