#include "sdcode/standard_codes.hpp"

#include "sdcode/errors.hpp"

namespace sdc::codes {

namespace {

Word from_bits(const char* s) {
  Word w = 0;
  for (std::size_t i = 0; s[i]; ++i)
    if (s[i] == '1') w |= Word{1} << i;
  return w;
}

}  // namespace

LinearCode i2() { return LinearCode(2, {0b11}); }

LinearCode e8() {
  return LinearCode(8, {from_bits("11110000"), from_bits("00111100"), from_bits("00001111"), from_bits("01010101")});
}

LinearCode golay24() {
  // g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11
  const Word g = from_bits("101011100011");
  std::vector<Word> rows;
  for (std::size_t s = 0; s < 12; ++s) {
    Word r = g << s;
    if (__builtin_parityll(r)) r |= Word{1} << 23;
    rows.push_back(r);
  }
  return LinearCode(24, std::move(rows));
}

LinearCode d16_plus() {
  std::vector<Word> rows;
  for (std::size_t s = 0; s + 4 <= 16; s += 2) rows.push_back(Word{0xF} << s);
  rows.push_back(from_bits("0101010101010101"));
  return LinearCode(16, std::move(rows));
}

LinearCode all_ones_code(std::size_t n) {
  if (n == 0 || n > kMaxCodeLength) throw ValidationError("all_ones_code: bad length");
  Word w = n == 64 ? ~Word{0} : (Word{1} << n) - 1;
  return LinearCode(n, {w});
}

LinearCode direct_power(const LinearCode& c, std::size_t copies) {
  if (copies == 0) throw ValidationError("direct_power: need at least one copy");
  LinearCode out = c;
  for (std::size_t i = 1; i < copies; ++i) out = direct_sum(out, c);
  return out;
}

}  // namespace sdc::codes
