#include "doctest.h"
#include "oracles.hpp"

#include "sdcode/equivalence.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/standard_codes.hpp"

#include <numeric>
#include <random>

using namespace sdc;

namespace {

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

LinearCode random_code(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Word> g;
  for (std::size_t i = 0; i < k; ++i) g.push_back(rng() & ((Word{1} << n) - 1));
  return LinearCode(n, g);
}

std::vector<std::uint64_t> gens_of(const LinearCode& c) { return {c.basis().begin(), c.basis().end()}; }

}  // namespace

TEST_SUITE("equivalence") {

TEST_CASE("automorphism group orders of standard codes") {
  CHECK(automorphism_group(codes::e8()).order() == 1344);
  CHECK(automorphism_group(codes::direct_power(codes::i2(), 2)).order() == 8);
  auto g = canonical_labeling(codes::golay24());
  PermGroup ag(24, g.generators);
  CHECK(ag.order() == 244823040);
  CHECK(g.orbit_product == ag.order());
  CHECK(ag.orbit(0).size() == 24);
  CHECK(automorphism_group(direct_sum(codes::e8(), codes::e8())).order() == 2 * 1344 * 1344);
  // 16!/|Aut| summed over the two classes is the number of codes, 9845550
  BigInt total = factorial(16) / automorphism_group(codes::d16_plus()).order() +
                 factorial(16) / automorphism_group(direct_sum(codes::e8(), codes::e8())).order();
  CHECK(total == 9845550);
  for (const auto& gen : ag.generators()) CHECK(permute(codes::golay24(), gen) == codes::golay24());
}

TEST_CASE("zero and full codes") {
  LinearCode zero(6, {});
  CHECK(automorphism_group(zero).order() == 720);
  LinearCode full(5, {1, 2, 4, 8, 16});
  CHECK(automorphism_group(full).order() == 120);
  CHECK(canonical_form(zero).code == zero);
}

TEST_CASE("automorphism orders and equivalence match brute force on random small codes") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 120; ++t) {
    std::size_t n = 2 + rng() % 7;
    auto c = random_code(rng, n, 1 + rng() % n);
    auto lr = canonical_labeling(c);
    PermGroup a(n, lr.generators);
    CHECK(a.order() == oracle::count_automorphisms(gens_of(c), n));
    CHECK(lr.orbit_product == a.order());
    CHECK(permute(c, lr.canonical.relabeling) == lr.canonical.code);
    auto d = permute(c, random_perm(rng, n));
    CHECK(canonical_form(d).code == lr.canonical.code);
    auto e = random_code(rng, n, c.dimension());
    auto w = is_equivalent(c, e);
    bool brute = e.dimension() == c.dimension() && oracle::equivalent(gens_of(c), gens_of(e), n);
    CHECK(w.has_value() == brute);
    if (w) CHECK(permute(c, *w) == e);
  }
}

TEST_CASE("canonical form invariance on self-dual catalogs") {
  std::mt19937_64 rng(7);
  std::vector<LinearCode> cat{codes::e8(), codes::d16_plus(), direct_sum(codes::e8(), codes::e8()), codes::golay24(),
                              codes::direct_power(codes::e8(), 3), direct_sum(codes::d16_plus(), codes::e8())};
  for (const auto& c : cat) {
    auto base = canonical_form(c).code;
    for (int t = 0; t < 15; ++t) {
      auto p = random_perm(rng, c.length());
      auto cf = canonical_form(permute(c, p));
      CHECK(cf.code == base);
    }
    std::vector<Point> rev(c.length());
    for (std::size_t i = 0; i < c.length(); ++i) rev[i] = static_cast<Point>(c.length() - 1 - i);
    CHECK(canonical_form(permute(c, Permutation(rev))).code == base);
  }
  CHECK_FALSE(canonical_form(codes::d16_plus()).code == canonical_form(direct_sum(codes::e8(), codes::e8())).code);
}

TEST_CASE("witnesses compose") {
  std::mt19937_64 rng(3);
  auto a = codes::d16_plus();
  auto b = permute(a, random_perm(rng, 16));
  auto c = permute(a, random_perm(rng, 16));
  auto ab = is_equivalent(a, b);
  auto bc = is_equivalent(b, c);
  REQUIRE(ab);
  REQUIRE(bc);
  CHECK(permute(a, *ab * *bc) == c);
  CHECK_FALSE(is_equivalent(a, direct_sum(codes::e8(), codes::e8())));
}

TEST_CASE("design invariant") {
  auto g = design_invariant(codes::golay24(), 8);
  CHECK(g.word_count == 759);
  for (std::size_t i = 0; i < 24; ++i) CHECK(g.gram[i][i] == 253);
  auto e = design_invariant(codes::e8(), 4);
  for (std::size_t i = 0; i < 8; ++i) CHECK(e.gram[i][i] == 7);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(e.gram[i][j] == e.gram[j][i]);
  CHECK(e.n_set == std::set<std::uint32_t>{3, 7});
  CHECK_FALSE(e.value_57_removed);
}

TEST_CASE("fingerprints") {
  std::mt19937_64 rng(19);
  for (const auto& c : {codes::e8(), codes::d16_plus(), codes::golay24()}) {
    auto f = fingerprint(c, true);
    for (int t = 0; t < 10; ++t) CHECK(fingerprint(permute(c, random_perm(rng, c.length())), true) == f);
  }
  CHECK(*fingerprint(codes::e8(), true).aut_order == 1344);
  auto f1 = fingerprint(codes::d16_plus());
  auto f2 = fingerprint(direct_sum(codes::e8(), codes::e8()));
  CHECK(f1.a4 == 28);
  CHECK(f2.a4 == 28);
  CHECK_FALSE(f1 == f2);
  CHECK_FALSE(fingerprint(codes::e8()).aut_order.has_value());
}

TEST_CASE("dedup") {
  std::mt19937_64 rng(5);
  std::vector<LinearCode> pool;
  for (int t = 0; t < 30; ++t) pool.push_back(permute(codes::e8(), random_perm(rng, 8)));
  auto r = dedup(pool);
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 30);
  CHECK(*r[0].fingerprint.aut_order == 1344);
  CHECK(r[0].hash.size() == 64);
  for (const auto& g : r[0].aut_generators) CHECK(permute(r[0].canonical, g) == r[0].canonical);

  std::vector<LinearCode> mixed;
  for (int t = 0; t < 6; ++t) {
    mixed.push_back(permute(codes::d16_plus(), random_perm(rng, 16)));
    mixed.push_back(permute(direct_sum(codes::e8(), codes::e8()), random_perm(rng, 16)));
  }
  auto m1 = dedup(mixed);
  std::shuffle(mixed.begin(), mixed.end(), rng);
  auto m2 = dedup(mixed, 2);
  REQUIRE(m1.size() == 2);
  REQUIRE(m2.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(m1[i].canonical == m2[i].canonical);
    CHECK(m1[i].hash == m2[i].hash);
    CHECK(m1[i].fingerprint == m2[i].fingerprint);
  }
}

TEST_CASE("budget errors") {
  CanonicalOptions tiny;
  tiny.codeword_cap = 100;
  CHECK_THROWS_AS(canonical_form(codes::golay24(), tiny), BudgetError);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // TEST_SUITE
