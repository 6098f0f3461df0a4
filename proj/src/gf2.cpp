#include "sdcode/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace sdc {

namespace {

std::size_t word_count(std::size_t length) { return (length + kWordBits - 1) / kWordBits; }

Word tail_mask(std::size_t length) {
  std::size_t r = length % kWordBits;
  return r == 0 ? ~Word{0} : (Word{1} << r) - 1;
}

}  // namespace

BitVector::BitVector(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string contains a character other than 0/1");
  }
  return v;
}

BitVector BitVector::from_word(std::size_t length, Word w) {
  if (length > kWordBits) throw std::invalid_argument("from_word: length exceeds 64");
  BitVector v(length);
  if (length > 0) v.words_[0] = w & tail_mask(length);
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  Word bit = Word{1} << (i % kWordBits);
  if (value)
    words_[i / kWordBits] |= bit;
  else
    words_[i / kWordBits] &= ~bit;
}

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word x) { return x == 0; });
}

std::optional<std::size_t> BitVector::first_set() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
  return std::nullopt;
}

Word BitVector::to_word() const {
  if (length_ > kWordBits) throw std::logic_error("to_word: vector longer than 64");
  return words_.empty() ? 0 : words_[0];
}

BitVector& BitVector::operator^=(const BitVector& other) {
  assert(length_ == other.length_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  assert(length_ == other.length_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  std::size_t n = std::min(a.length_, b.length_);
  for (std::size_t i = 0; i < n; ++i) {
    bool x = a.test(i), y = b.test(i);
    if (x != y) return x ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.length_ <=> b.length_;
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

std::size_t popcount_and(const BitVector& v, const BitVector& w) {
  if (v.size() != w.size()) throw std::invalid_argument("popcount_and: length mismatch");
  auto a = v.words(), b = w.words();
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

bool dot(const BitVector& v, const BitVector& w) { return popcount_and(v, w) & 1u; }

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, BitVector(cols)) {}

GF2Matrix::GF2Matrix(std::size_t cols, std::vector<BitVector> rows) : cols_(cols), data_(std::move(rows)) {
  for (const auto& r : data_)
    if (r.size() != cols_) throw std::invalid_argument("GF2Matrix: row length differs from column count");
}

GF2Matrix GF2Matrix::from_strings(const std::vector<std::string>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<BitVector> data;
  data.reserve(rows.size());
  for (const auto& r : rows) data.push_back(BitVector::from_string(r));
  return GF2Matrix(cols, std::move(data));
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void GF2Matrix::append_row(BitVector v) {
  if (v.size() != cols_) throw std::invalid_argument("append_row: length mismatch");
  data_.push_back(std::move(v));
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r);
  return t;
}

BitVector GF2Matrix::multiply(const BitVector& v) const {
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    if (dot(data_[r], v)) out.set(r);
  return out;
}

Echelon rref(const GF2Matrix& m) {
  std::vector<BitVector> rows = m.row_data();
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < m.cols() && top < rows.size(); ++c) {
    std::size_t p = top;
    while (p < rows.size() && !rows[p].test(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[top], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != top && rows[r].test(c)) rows[r] ^= rows[top];
    pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  Echelon e;
  e.rank = top;
  e.pivots = std::move(pivots);
  e.reduced = GF2Matrix(m.cols(), std::move(rows));
  return e;
}

std::size_t rank(const GF2Matrix& m) { return rref(m).rank; }

GF2Matrix kernel(const GF2Matrix& m) {
  Echelon e = rref(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitVector v(n);
    v.set(free);
    for (std::size_t r = 0; r < e.rank; ++r)
      if (e.reduced.get(r, free)) v.set(e.pivots[r]);
    basis.push_back(std::move(v));
  }
  return rref(GF2Matrix(n, std::move(basis))).reduced;
}

namespace words {

std::vector<std::size_t> rref(std::vector<Word>& rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
    Word bit = Word{1} << c;
    std::size_t p = top;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[top], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != top && (rows[r] & bit)) rows[r] ^= rows[top];
    pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  return pivots;
}

Word reduce(Word v, std::span<const Word> basis, std::span<const std::size_t> pivots) noexcept {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((v >> pivots[i]) & 1u) v ^= basis[i];
  return v;
}

}  // namespace words

}  // namespace sdc
