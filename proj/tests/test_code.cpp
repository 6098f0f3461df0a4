#include "doctest.h"
#include "oracles.hpp"

#include "sdcode/code.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/gm_format.hpp"
#include "sdcode/standard_codes.hpp"

#include <numeric>
#include <random>

using namespace sdc;

namespace {

std::vector<Word> all_words(const LinearCode& c) {
  std::vector<Word> out;
  for_each_codeword(c, [&](Word w) { out.push_back(w); });
  std::sort(out.begin(), out.end());
  return out;
}

// Dual by scanning all 2^n vectors.
std::vector<Word> brute_dual(const LinearCode& c) {
  std::vector<Word> out;
  for (Word v = 0; v < (Word{1} << c.length()); ++v) {
    bool ok = true;
    for (Word g : c.basis()) ok = ok && !words::dot(v, g);
    if (ok) out.push_back(v);
  }
  return out;
}

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

LinearCode random_code(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Word> g;
  Word mask = n == 64 ? ~Word{0} : (Word{1} << n) - 1;
  for (std::size_t i = 0; i < k; ++i) g.push_back(rng() & mask);
  return LinearCode(n, g);
}

}  // namespace

TEST_SUITE("codecore") {

TEST_CASE("construction rejects degenerate input") {
  CHECK_THROWS_AS(LinearCode(0, {}), ValidationError);
  CHECK_THROWS_AS(LinearCode(65, {}), ValidationError);
  CHECK_THROWS_AS(LinearCode(3, {0b1000}), ValidationError);
  LinearCode c(4, {0b0011, 0b0011, 0b1100});
  CHECK(c.dimension() == 2);
}

TEST_CASE("dual") {
  CHECK(dual(codes::i2()) == codes::i2());
  LinearCode full(5, {1, 2, 4, 8, 16});
  CHECK(dual(full).dimension() == 0);
  auto e8 = codes::e8();
  CHECK(dual(e8) == e8);
  auto w = all_words(e8);
  CHECK(w.size() == 16);
  for (Word a : w)
    for (Word b : w) CHECK_FALSE(words::dot(a, b));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + rng() % 12;
    auto c = random_code(rng, n, rng() % (n + 1));
    auto d = dual(c);
    CHECK(d.dimension() + c.dimension() == n);
    CHECK(all_words(d) == brute_dual(c));
    CHECK(dual(d) == c);
    CHECK(&c.dual() == &c.dual());
    CHECK(c.dual() == d);
  }
}

TEST_CASE("self-dual and doubly even predicates") {
  auto e8 = codes::e8();
  CHECK(is_self_dual(e8));
  CHECK(is_doubly_even(e8));
  auto counts = oracle::weight_counts(all_words(e8), 8);
  for (std::size_t w = 0; w <= 8; ++w)
    if (counts[w]) CHECK(w % 4 == 0);
  CHECK(is_self_dual(codes::i2()));
  CHECK_FALSE(is_doubly_even(codes::i2()));
  auto g = codes::golay24();
  CHECK(g.dimension() == 12);
  CHECK(is_self_dual(g));
  CHECK(is_doubly_even(g));
  CHECK(is_self_dual(codes::d16_plus()));
  CHECK(is_doubly_even(codes::d16_plus()));
  // not self-orthogonal, but all generators of weight 4: the fallback must say no
  LinearCode c(6, {0b001111, 0b011110});
  CHECK_FALSE(is_doubly_even(c));
}

TEST_CASE("weight distributions") {
  auto e8 = codes::e8();
  auto wd = weight_distribution(e8);
  CHECK(wd.counts == std::vector<std::uint64_t>{1, 0, 0, 0, 14, 0, 0, 0, 1});
  CHECK(wd == e8.weights());
  auto gw = weight_distribution(codes::golay24());
  auto golay = codes::golay24();
  auto go = oracle::weight_counts(oracle::span({golay.basis().begin(), golay.basis().end()}), 24);
  CHECK(gw.counts == go);
  CHECK(gw[8] == 759);
  CHECK(gw[12] == 2576);
  CHECK(min_weight(e8) == 4);
  CHECK(min_weight(codes::golay24()) == 8);
  CHECK(min_weight(LinearCode(5, {})) == 6);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + rng() % 14;
    auto c = random_code(rng, n, 1 + rng() % n);
    auto a = weight_distribution(c);
    CHECK(a.total() == (std::uint64_t{1} << c.dimension()));
    CHECK(a.counts == oracle::weight_counts(all_words(c), n));
    CHECK(macwilliams(a, c.dimension()) == weight_distribution(dual(c)));
    std::size_t mw = n + 1;
    for (std::size_t w = 1; w <= n; ++w)
      if (a[w]) {
        mw = w;
        break;
      }
    CHECK(min_weight(c) == mw);
  }
  CHECK_THROWS_AS(weight_distribution(codes::golay24(), 10), BudgetError);
}

TEST_CASE("coset weight distribution") {
  auto e8 = codes::e8();
  auto wd = coset_weight_distribution(LinearCode(8, {e8.basis().begin(), e8.basis().end()}), 1);
  CHECK(wd.total() == 16);
  CHECK(wd[1] == 1);
  CHECK(wd[3] == 7);
}

TEST_CASE("shadow decomposition") {
  auto s = shadow(codes::i2());
  CHECK(s.c0.dimension() == 0);
  CHECK(s.shadow_weights.total() == 2);
  CHECK(s.shadow_weights[1] == 2);
  auto i2_3 = codes::direct_power(codes::i2(), 3);
  auto s6 = shadow(i2_3);
  CHECK(s6.c0.dimension() == 2);
  CHECK(s6.shadow_weights.total() == 8);
  CHECK_THROWS_AS(shadow(codes::e8()), ValidationError);

  // exhaustive coset split over all of C0-dual, for some singly even self-dual codes
  std::vector<LinearCode> cases{codes::i2(), i2_3, direct_sum(codes::e8(), codes::i2()),
                                codes::direct_power(codes::i2(), 6), direct_sum(codes::d16_plus(), codes::i2())};
  for (const auto& c : cases) {
    auto sd = shadow(c);
    std::size_t n = c.length();
    for (Word x : all_words(sd.c0)) {
      CHECK(words::weight(x) % 4 == 0);
      CHECK(c.contains(x));
    }
    CHECK(sd.c0.dimension() + 1 == c.dimension());
    CHECK(c.contains(sd.c2_rep));
    CHECK(words::weight(sd.c2_rep) % 4 == 2);
    CHECK_FALSE(c.contains(sd.c1_rep));
    CHECK_FALSE(c.contains(sd.c3_rep));
    CHECK_FALSE(sd.c0.contains(sd.c1_rep ^ sd.c3_rep));
    auto c0d = dual(sd.c0);
    CHECK(c0d.contains(sd.c1_rep));
    CHECK(c0d.contains(sd.c3_rep));
    // shadow vectors are those of C0-dual outside C, weights = n/2 mod 4
    std::vector<std::uint64_t> sw(n + 1, 0);
    for (Word x : all_words(c0d))
      if (!c.contains(x)) {
        CHECK(words::weight(x) % 4 == (n / 2) % 4);
        ++sw[words::weight(x)];
      }
    CHECK(sd.shadow_weights.counts == sw);
    // labeling rule: C1's least-weight rep is lex-least
    CHECK(words::weight(sd.c1_rep) <= words::weight(sd.c3_rep));
    if (words::weight(sd.c1_rep) == words::weight(sd.c3_rep)) CHECK(lex_less(sd.c1_rep, sd.c3_rep));
  }
}

TEST_CASE("puncture and shorten") {
  auto e8 = codes::e8();
  CHECK(puncture(e8, std::vector<std::size_t>{}) == e8);
  CHECK(shorten(e8, std::vector<std::size_t>{}) == e8);
  auto s = shorten(e8, std::vector<std::size_t>{0});
  CHECK(s.length() == 7);
  CHECK(s.dimension() == 3);
  for (Word w : all_words(s)) CHECK(words::weight(w) % 4 == 0);
  CHECK_THROWS_AS(shorten(e8, std::vector<std::size_t>{8}), ValidationError);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 15;
    auto c = random_code(rng, n, rng() % (n + 1));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 3 == 0) idx.push_back(i);
    if (idx.size() == n) idx.pop_back();
    // brute force both definitions
    std::vector<Word> p, sh;
    Word mask = 0;
    for (auto i : idx) mask |= Word{1} << i;
    for (Word w : all_words(c)) {
      p.push_back(delete_coordinates(w, n, idx));
      if ((w & mask) == 0) sh.push_back(delete_coordinates(w, n, idx));
    }
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    std::sort(sh.begin(), sh.end());
    sh.erase(std::unique(sh.begin(), sh.end()), sh.end());
    CHECK(all_words(puncture(c, idx)) == p);
    CHECK(all_words(shorten(c, idx)) == sh);
    CHECK(shorten(c, idx) == dual(puncture(dual(c), idx)));
  }
}

TEST_CASE("direct sum") {
  auto s = direct_sum(codes::i2(), codes::i2());
  CHECK(all_words(s) == std::vector<Word>{0b0000, 0b0011, 0b1100, 0b1111});
  auto ee = direct_sum(codes::e8(), codes::e8());
  CHECK(is_self_dual(ee));
  CHECK(is_doubly_even(ee));
  CHECK(ee.weights()[4] == 28);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    auto a = random_code(rng, 1 + rng() % 8, 1 + rng() % 3);
    auto b = random_code(rng, 1 + rng() % 8, 1 + rng() % 3);
    auto d = direct_sum(a, b);
    CHECK(d.dimension() == a.dimension() + b.dimension());
    CHECK(min_weight(d) == std::min(min_weight(a), min_weight(b)));
  }
}

TEST_CASE("permute") {
  std::mt19937_64 rng(29);
  auto g = codes::golay24();
  auto p = random_perm(rng, 24);
  auto h = permute(g, p);
  CHECK(h.weights() == g.weights());
  for (Word b : g.basis()) CHECK(h.contains(p.apply(b)));
}

TEST_CASE("subtract") {
  auto d = direct_sum(codes::e8(), codes::i2());
  CHECK(subtract(d, 8, 9) == codes::e8());
  CHECK_THROWS_AS(subtract(d, 3, 3), ValidationError);
  CHECK_THROWS_AS(subtract(codes::all_ones_code(4), 0, 1), ValidationError);
  std::mt19937_64 rng(31);
  std::vector<LinearCode> cat{direct_sum(codes::e8(), codes::e8()), codes::d16_plus()};
  for (int t = 0; t < 50; ++t) {
    auto base = permute(cat[t % 2], random_perm(rng, 16));
    std::size_t i = rng() % 16, j = rng() % 16;
    if (i == j) j = (j + 1) % 16;
    auto s = subtract(base, i, j);
    CHECK(s.length() == 14);
    CHECK(is_self_dual(s));
    // brute force the definition
    std::vector<std::size_t> ij{std::min(i, j), std::max(i, j)};
    std::vector<Word> expect;
    for (Word w : all_words(base))
      if (((w >> i) & 1) == ((w >> j) & 1)) expect.push_back(delete_coordinates(w, 16, ij));
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    CHECK(all_words(s) == expect);
  }
}

TEST_CASE("self-dual symmetry properties") {
  for (const auto& c : {codes::e8(), codes::golay24(), codes::d16_plus(), codes::direct_power(codes::e8(), 3)}) {
    const auto& wd = c.weights();
    CHECK(wd.total() == (std::uint64_t{1} << (c.length() / 2)));
    for (std::size_t w = 0; w <= c.length(); ++w) CHECK(wd[w] == wd[c.length() - w]);
  }
}

TEST_CASE("gm format") {
  auto e8 = codes::e8();
  auto text = to_gm(e8);
  CHECK(parse_gm(text) == e8);
  CHECK_THROWS_AS(parse_gm("2 2\n11\n11\n"), ParseError);
  CHECK(parse_gm("2 2\n11\n11\n", {.allow_dependent = true}).dimension() == 1);
  CHECK_THROWS_AS(parse_gm("3 1\n1x1\n"), ParseError);
  CHECK_THROWS_AS(parse_gm("3 1\n11\n"), ParseError);
  CHECK_THROWS_AS(parse_gm("3 2\n111\n"), ParseError);
  try {
    parse_gm("4 2\n1100\n11a0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  auto many = parse_gm_all(text + "\n" + to_gm(codes::i2()));
  CHECK(many.size() == 2);
  CHECK(many[1] == codes::i2());
}

}  // TEST_SUITE
