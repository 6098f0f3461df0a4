#pragma once

// Bit-packed vectors and matrices over GF(2).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

// Coordinate i lives at bit (i % 64) of word (i / 64). Bits past size() are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);

  // Characters '0'/'1', coordinate 0 first.
  static BitVector from_string(std::string_view bits);
  // Requires length <= 64; bits above length are discarded.
  static BitVector from_word(std::size_t length, Word w);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;
  std::optional<std::size_t> first_set() const noexcept;

  std::span<const Word> words() const noexcept { return words_; }
  // Requires size() <= 64.
  Word to_word() const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  // Lexicographic on the 0/1 string (coordinate 0 most significant).
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

  std::string to_string() const;

 private:
  std::size_t length_ = 0;
  std::vector<Word> words_;
};

// |supp(v) ∩ supp(w)|. Lengths must match.
std::size_t popcount_and(const BitVector& v, const BitVector& w);
// Standard inner product over GF(2).
bool dot(const BitVector& v, const BitVector& w);

class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);
  GF2Matrix(std::size_t cols, std::vector<BitVector> rows);

  static GF2Matrix from_strings(const std::vector<std::string>& rows);
  static GF2Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const BitVector& row(std::size_t i) const { return data_[i]; }
  BitVector& row(std::size_t i) { return data_[i]; }
  const std::vector<BitVector>& row_data() const noexcept { return data_; }
  bool get(std::size_t r, std::size_t c) const { return data_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { data_[r].set(c, v); }

  void append_row(BitVector v);

  GF2Matrix transpose() const;
  // M · v^T as a vector of length rows().
  BitVector multiply(const BitVector& v) const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

struct Echelon {
  GF2Matrix reduced;  // nonzero rows only
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form. Pivots are chosen scanning columns left to right.
Echelon rref(const GF2Matrix& m);
std::size_t rank(const GF2Matrix& m);
// Basis of {v : M v^T = 0}, in reduced row echelon form.
GF2Matrix kernel(const GF2Matrix& m);

// Single-word helpers used by the code layer (length <= 64).
namespace words {

inline int weight(Word w) noexcept { return __builtin_popcountll(w); }
inline bool dot(Word a, Word b) noexcept { return __builtin_parityll(a & b); }

// In-place RREF of a list of row words over `n` columns; drops zero rows.
// Returns pivots (lowest set bit = leftmost column).
std::vector<std::size_t> rref(std::vector<Word>& rows, std::size_t n);
// Reduce v by an RREF basis with the given pivots.
Word reduce(Word v, std::span<const Word> basis, std::span<const std::size_t> pivots) noexcept;

}  // namespace words

}  // namespace sdc
