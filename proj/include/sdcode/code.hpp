#pragma once

// Binary linear codes of length <= 64 and the per-code quantities used by the
// classification pipeline.

#include "sdcode/gf2.hpp"
#include "sdcode/permutation.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace sdc {

inline constexpr std::size_t kMaxCodeLength = 64;
// Default cap on the dimension for full codeword enumeration (2^26 codewords).
inline constexpr std::size_t kDefaultEnumerationDim = 26;

struct WeightDistribution {
  std::vector<std::uint64_t> counts;  // counts[w] = A_w, w = 0..n

  std::uint64_t operator[](std::size_t w) const { return w < counts.size() ? counts[w] : 0; }
  std::size_t length() const { return counts.empty() ? 0 : counts.size() - 1; }
  std::uint64_t total() const;
  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

namespace detail {
struct CodeCache;
}

// A code held as the nonzero rows of its reduced row echelon generator matrix.
// Immutable; the dual and the weight distribution are computed at most once
// and shared between copies.
class LinearCode {
 public:
  // Generators may be dependent; they are re-reduced. Length must be 1..64.
  LinearCode(std::size_t n, std::vector<Word> generators);
  static LinearCode from_matrix(const GF2Matrix& gens);

  std::size_t length() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  std::span<const Word> basis() const noexcept { return basis_; }
  std::span<const std::size_t> pivots() const noexcept { return pivots_; }
  GF2Matrix generator_matrix() const;
  Word all_ones() const noexcept { return n_ == 64 ? ~Word{0} : (Word{1} << n_) - 1; }

  Word reduce(Word v) const noexcept { return words::reduce(v, basis_, pivots_); }
  bool contains(Word v) const noexcept { return reduce(v) == 0; }

  const LinearCode& dual() const;
  // Cached; throws BudgetError when the dimension exceeds kDefaultEnumerationDim.
  const WeightDistribution& weights() const;

  friend bool operator==(const LinearCode& a, const LinearCode& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t n_;
  std::vector<Word> basis_;
  std::vector<std::size_t> pivots_;
  std::shared_ptr<detail::CodeCache> cache_;
};

// Visits every codeword in Gray-code order (one XOR per step), zero first.
void for_each_codeword(const LinearCode& c, const std::function<void(Word)>& visit,
                       std::size_t max_dim = kDefaultEnumerationDim);
std::vector<Word> codewords_of_weight(const LinearCode& c, std::size_t w,
                                      std::size_t max_dim = kDefaultEnumerationDim);

LinearCode dual(const LinearCode& c);
bool is_self_orthogonal(const LinearCode& c);
bool is_self_dual(const LinearCode& c);
bool is_doubly_even(const LinearCode& c);

WeightDistribution weight_distribution(const LinearCode& c, std::size_t max_dim = kDefaultEnumerationDim);
// Weight distribution of the coset v + C.
WeightDistribution coset_weight_distribution(const LinearCode& c, Word v,
                                             std::size_t max_dim = kDefaultEnumerationDim);
// MacWilliams transform: weight distribution of the dual from that of the code.
WeightDistribution macwilliams(const WeightDistribution& wd, std::size_t dim);

// Least nonzero weight; the zero code returns length()+1.
std::size_t min_weight(const LinearCode& c, std::size_t max_dim = kDefaultEnumerationDim);

// C0 ∪ C1 ∪ C2 ∪ C3 = C0^⊥ for a singly even self-dual code.
struct ShadowDecomposition {
  LinearCode c0;
  Word c1_rep = 0;
  Word c2_rep = 0;
  Word c3_rep = 0;
  WeightDistribution shadow_weights;  // of S = C1 ∪ C3
};

// Requires a singly even self-dual code. C1 is the coset whose minimum-weight
// representative is lexicographically least; the returned representatives are
// those minimum-weight vectors.
ShadowDecomposition shadow(const LinearCode& c);

// Coordinates in `coords` are 0-indexed.
LinearCode puncture(const LinearCode& c, std::span<const std::size_t> coords);
LinearCode shorten(const LinearCode& c, std::span<const std::size_t> coords);
LinearCode direct_sum(const LinearCode& a, const LinearCode& b);
LinearCode permute(const LinearCode& c, const Permutation& p);
// Codewords with equal entries at i and j, those two coordinates deleted.
LinearCode subtract(const LinearCode& d, std::size_t i, std::size_t j);

// Deletes the listed coordinates from v (length n), closing up the gaps.
Word delete_coordinates(Word v, std::size_t n, std::span<const std::size_t> coords);
// Lexicographic comparison on 0/1 strings with coordinate 0 first.
bool lex_less(Word a, Word b) noexcept;
std::string word_to_string(Word v, std::size_t n);

}  // namespace sdc
