#include "sdcode/code.hpp"

#include "sdcode/bigint.hpp"
#include "sdcode/errors.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <string>

namespace sdc {

namespace detail {

struct CodeCache {
  std::once_flag dual_once;
  std::unique_ptr<LinearCode> dual;
  std::once_flag weights_once;
  std::optional<WeightDistribution> weights;
};

}  // namespace detail

std::uint64_t WeightDistribution::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

LinearCode::LinearCode(std::size_t n, std::vector<Word> generators)
    : n_(n), basis_(std::move(generators)), cache_(std::make_shared<detail::CodeCache>()) {
  if (n == 0) throw ValidationError("zero-length codes are not supported");
  if (n > kMaxCodeLength) throw ValidationError("code length " + std::to_string(n) + " exceeds 64");
  Word mask = all_ones();
  for (Word w : basis_)
    if (w & ~mask) throw ValidationError("generator has bits beyond the code length");
  pivots_ = words::rref(basis_, n_);
}

LinearCode LinearCode::from_matrix(const GF2Matrix& gens) {
  std::vector<Word> rows;
  rows.reserve(gens.rows());
  if (gens.cols() > kMaxCodeLength) throw ValidationError("code length exceeds 64");
  for (const auto& r : gens.row_data()) rows.push_back(r.to_word());
  return LinearCode(gens.cols(), std::move(rows));
}

GF2Matrix LinearCode::generator_matrix() const {
  std::vector<BitVector> rows;
  rows.reserve(basis_.size());
  for (Word w : basis_) rows.push_back(BitVector::from_word(n_, w));
  return GF2Matrix(n_, std::move(rows));
}

const LinearCode& LinearCode::dual() const {
  std::call_once(cache_->dual_once, [this] { cache_->dual = std::make_unique<LinearCode>(sdc::dual(*this)); });
  return *cache_->dual;
}

const WeightDistribution& LinearCode::weights() const {
  std::call_once(cache_->weights_once, [this] { cache_->weights = weight_distribution(*this); });
  return *cache_->weights;
}

void for_each_codeword(const LinearCode& c, const std::function<void(Word)>& visit, std::size_t max_dim) {
  std::size_t k = c.dimension();
  if (k > max_dim)
    throw BudgetError("codeword enumeration of dimension " + std::to_string(k) + " exceeds budget " +
                      std::to_string(max_dim));
  auto basis = c.basis();
  Word cw = 0;
  visit(cw);
  std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    cw ^= basis[static_cast<std::size_t>(__builtin_ctzll(i))];
    visit(cw);
  }
}

std::vector<Word> codewords_of_weight(const LinearCode& c, std::size_t w, std::size_t max_dim) {
  std::vector<Word> out;
  for_each_codeword(
      c,
      [&](Word v) {
        if (static_cast<std::size_t>(words::weight(v)) == w) out.push_back(v);
      },
      max_dim);
  std::sort(out.begin(), out.end());
  return out;
}

LinearCode dual(const LinearCode& c) {
  GF2Matrix k = kernel(c.generator_matrix());
  return LinearCode::from_matrix(k);
}

bool is_self_orthogonal(const LinearCode& c) {
  auto b = c.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      if (words::dot(b[i], b[j])) return false;
  return true;
}

bool is_self_dual(const LinearCode& c) { return 2 * c.dimension() == c.length() && is_self_orthogonal(c); }

bool is_doubly_even(const LinearCode& c) {
  if (is_self_orthogonal(c)) {
    for (Word w : c.basis())
      if (words::weight(w) % 4 != 0) return false;
    return true;
  }
  bool ok = true;
  for_each_codeword(c, [&](Word v) { ok = ok && words::weight(v) % 4 == 0; });
  return ok;
}

WeightDistribution weight_distribution(const LinearCode& c, std::size_t max_dim) {
  WeightDistribution wd;
  wd.counts.assign(c.length() + 1, 0);
  for_each_codeword(c, [&](Word v) { ++wd.counts[static_cast<std::size_t>(words::weight(v))]; }, max_dim);
  return wd;
}

WeightDistribution coset_weight_distribution(const LinearCode& c, Word v, std::size_t max_dim) {
  WeightDistribution wd;
  wd.counts.assign(c.length() + 1, 0);
  for_each_codeword(c, [&](Word x) { ++wd.counts[static_cast<std::size_t>(words::weight(x ^ v))]; }, max_dim);
  return wd;
}

WeightDistribution macwilliams(const WeightDistribution& wd, std::size_t dim) {
  std::size_t n = wd.length();
  std::vector<std::vector<BigInt>> binom(n + 1, std::vector<BigInt>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    binom[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }
  WeightDistribution out;
  out.counts.assign(n + 1, 0);
  BigInt scale = BigInt(1) << dim;
  for (std::size_t j = 0; j <= n; ++j) {
    BigInt sum = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (wd.counts[i] == 0) continue;
      BigInt kraw = 0;
      for (std::size_t s = 0; s <= j && s <= i; ++s) {
        if (j - s > n - i) continue;
        BigInt term = binom[i][s] * binom[n - i][j - s];
        if (s % 2) kraw -= term;
        else kraw += term;
      }
      sum += kraw * wd.counts[i];
    }
    if (sum % scale != 0 || sum < 0) throw InvariantError("MacWilliams transform produced a non-integral count");
    out.counts[j] = static_cast<std::uint64_t>(sum / scale);
  }
  return out;
}

std::size_t min_weight(const LinearCode& c, std::size_t max_dim) {
  std::size_t n = c.length();
  if (c.dimension() == 0) return n + 1;
  // Every weight in a doubly even code is a multiple of 4, so 4 cannot be beaten.
  std::size_t floor = 1;
  bool even = std::all_of(c.basis().begin(), c.basis().end(), [](Word w) { return words::weight(w) % 2 == 0; });
  if (even) floor = 2;
  if (even && is_doubly_even(c)) floor = 4;
  std::size_t k = c.dimension();
  if (k > max_dim) throw BudgetError("min_weight: dimension " + std::to_string(k) + " exceeds budget");
  std::size_t best = n + 1;
  for (Word w : c.basis()) best = std::min<std::size_t>(best, static_cast<std::size_t>(words::weight(w)));
  auto basis = c.basis();
  Word cw = 0;
  std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total && best > floor; ++i) {
    cw ^= basis[static_cast<std::size_t>(__builtin_ctzll(i))];
    best = std::min<std::size_t>(best, static_cast<std::size_t>(words::weight(cw)));
  }
  return best;
}

namespace {

// Minimum-weight vector of v + C; ties go to the lexicographically least.
Word coset_leader(const LinearCode& c, Word v) {
  Word best = v;
  for_each_codeword(c, [&](Word x) {
    Word y = x ^ v;
    int wy = words::weight(y), wb = words::weight(best);
    if (wy < wb || (wy == wb && lex_less(y, best))) best = y;
  });
  return best;
}

}  // namespace

ShadowDecomposition shadow(const LinearCode& c) {
  if (!is_self_dual(c)) throw ValidationError("shadow: code is not self-dual");
  if (is_doubly_even(c)) throw ValidationError("shadow: code is doubly even, the shadow needs a singly even code");
  auto basis = c.basis();
  std::vector<int> t(basis.size());
  std::size_t j = basis.size();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    t[i] = (words::weight(basis[i]) / 2) % 2;
    if (t[i] && j == basis.size()) j = i;
  }
  std::vector<Word> c0_rows;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (i != j) c0_rows.push_back(t[i] ? basis[i] ^ basis[j] : basis[i]);
  LinearCode c0(c.length(), std::move(c0_rows));
  LinearCode c0_dual = dual(c0);
  Word s = 0;
  bool found = false;
  for (Word w : c0_dual.basis())
    if (!c.contains(w)) {
      s = w;
      found = true;
      break;
    }
  if (!found) throw InvariantError("shadow: C0-dual does not extend C");
  Word a = coset_leader(c0, s);
  Word b = coset_leader(c0, s ^ basis[j]);
  ShadowDecomposition d{c0, 0, 0, 0, {}};
  if (lex_less(b, a)) std::swap(a, b);
  d.c1_rep = a;
  d.c3_rep = b;
  d.c2_rep = coset_leader(c0, basis[j]);
  d.shadow_weights = coset_weight_distribution(c, s);
  return d;
}

Word delete_coordinates(Word v, std::size_t n, std::span<const std::size_t> coords) {
  std::vector<bool> drop(n, false);
  for (std::size_t i : coords) drop[i] = true;
  Word out = 0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (drop[i]) continue;
    if ((v >> i) & 1u) out |= Word{1} << pos;
    ++pos;
  }
  return out;
}

namespace {

void check_coords(const LinearCode& c, std::span<const std::size_t> coords) {
  std::vector<bool> seen(c.length(), false);
  for (std::size_t i : coords) {
    if (i >= c.length()) throw ValidationError("coordinate " + std::to_string(i + 1) + " out of range");
    if (seen[i]) throw ValidationError("coordinate " + std::to_string(i + 1) + " repeated");
    seen[i] = true;
  }
  if (coords.size() >= c.length()) throw ValidationError("cannot delete every coordinate");
}

}  // namespace

LinearCode puncture(const LinearCode& c, std::span<const std::size_t> coords) {
  check_coords(c, coords);
  std::vector<Word> rows;
  for (Word w : c.basis()) rows.push_back(delete_coordinates(w, c.length(), coords));
  return LinearCode(c.length() - coords.size(), std::move(rows));
}

LinearCode shorten(const LinearCode& c, std::span<const std::size_t> coords) {
  check_coords(c, coords);
  Word mask = 0;
  for (std::size_t i : coords) mask |= Word{1} << i;
  // Eliminate on the deleted coordinates; the rows left with no support there
  // span the subcode vanishing on them.
  std::vector<Word> rows(c.basis().begin(), c.basis().end());
  std::size_t top = 0;
  for (std::size_t col : coords) {
    Word bit = Word{1} << col;
    std::size_t p = top;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[top], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != top && (rows[r] & bit)) rows[r] ^= rows[top];
    ++top;
  }
  std::vector<Word> out;
  for (std::size_t r = top; r < rows.size(); ++r) {
    if (rows[r] & mask) throw InvariantError("shorten: elimination left support on deleted coordinates");
    out.push_back(delete_coordinates(rows[r], c.length(), coords));
  }
  return LinearCode(c.length() - coords.size(), std::move(out));
}

LinearCode direct_sum(const LinearCode& a, const LinearCode& b) {
  std::vector<Word> rows(a.basis().begin(), a.basis().end());
  for (Word w : b.basis()) rows.push_back(w << a.length());
  return LinearCode(a.length() + b.length(), std::move(rows));
}

LinearCode permute(const LinearCode& c, const Permutation& p) {
  if (p.degree() != c.length()) throw ValidationError("permute: degree differs from code length");
  std::vector<Word> rows;
  rows.reserve(c.dimension());
  for (Word w : c.basis()) rows.push_back(p.apply(w));
  return LinearCode(c.length(), std::move(rows));
}

LinearCode subtract(const LinearCode& d, std::size_t i, std::size_t j) {
  if (i == j) throw ValidationError("subtract: coordinates must differ");
  if (i >= d.length() || j >= d.length()) throw ValidationError("subtract: coordinate out of range");
  if (!is_self_dual(d)) throw ValidationError("subtract: code is not self-dual");
  auto basis = d.basis();
  auto differs = [&](Word w) { return ((w >> i) ^ (w >> j)) & 1u; };
  std::size_t pick = basis.size();
  for (std::size_t r = 0; r < basis.size(); ++r)
    if (differs(basis[r])) {
      pick = r;
      break;
    }
  std::vector<Word> rows;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (r == pick) continue;
    rows.push_back(differs(basis[r]) ? basis[r] ^ basis[pick] : basis[r]);
  }
  std::size_t del[2] = {std::min(i, j), std::max(i, j)};
  for (Word& w : rows) w = delete_coordinates(w, d.length(), del);
  return LinearCode(d.length() - 2, std::move(rows));
}

bool lex_less(Word a, Word b) noexcept {
  Word diff = a ^ b;
  if (diff == 0) return false;
  return (a & diff & (~diff + 1)) == 0;
}

std::string word_to_string(Word v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((v >> i) & 1u) s[i] = '1';
  return s;
}

}  // namespace sdc
