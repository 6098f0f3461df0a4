#include "doctest.h"
#include "oracles.hpp"

#include "sdcode/errors.hpp"
#include "sdcode/perm_group.hpp"
#include "sdcode/standard_codes.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace sdc;

namespace {

// All elements by closure under right multiplication by generators.
std::set<Permutation> closure(std::size_t n, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation(n)};
  std::vector<Permutation> todo{Permutation(n)};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      auto y = x * g;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

}  // namespace

TEST_SUITE("permgroup") {

TEST_CASE("permutation basics") {
  auto p = Permutation::parse_cycles(5, "(1,2,3)(4,5)");
  CHECK(p[0] == 1);
  CHECK(p[2] == 0);
  CHECK(p.order() == 6);
  CHECK(p.to_cycle_string() == "(1,2,3)(4,5)");
  CHECK(Permutation::parse_cycles(3, "()").is_identity());
  CHECK(Permutation(3).to_cycle_string() == "()");
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.cycle_type() == std::vector<std::size_t>{2, 3});
  auto q = Permutation::parse_cycles(5, "(1,2)");
  CHECK((p * q)[0] == q[p[0]]);
  CHECK(p.apply(Word{0b00001}) == 0b00010);
  CHECK_THROWS(Permutation(std::vector<Point>{0, 0}));
  CHECK_THROWS(Permutation::parse_cycles(3, "(1,4)"));
}

TEST_CASE("symmetric and cyclic groups") {
  PermGroup s5(5, {Permutation::parse_cycles(5, "(1,2)"), Permutation::parse_cycles(5, "(1,2,3,4,5)")});
  CHECK(s5.order() == 120);
  PermGroup c7(7, {Permutation::parse_cycles(7, "(1,2,3,4,5,6,7)")});
  CHECK(c7.order() == 7);
  PermGroup trivial(4);
  CHECK(trivial.order() == 1);
  CHECK(trivial.contains(Permutation(4)));
  CHECK_FALSE(trivial.contains(Permutation::parse_cycles(4, "(1,2)")));
  PermGroup s12(12, {Permutation::parse_cycles(12, "(1,2)"),
                     Permutation::parse_cycles(12, "(1,2,3,4,5,6,7,8,9,10,11,12)")});
  CHECK(s12.order() == factorial(12));
}

TEST_CASE("order and membership agree with closure on random small groups") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 3 + rng() % 5;
    std::vector<Permutation> gens;
    std::size_t k = 1 + rng() % 3;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_perm(rng, n));
    PermGroup g(n, gens);
    auto all = closure(n, gens);
    CHECK(g.order() == all.size());
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), 0);
    do {
      Permutation x(img);
      CHECK(g.contains(x) == (all.count(x) == 1));
    } while (std::next_permutation(img.begin(), img.end()));
    std::set<Permutation> visited;
    g.for_each_element([&](const Permutation& x) {
      visited.insert(x);
      return true;
    });
    CHECK(visited == all);
    BigInt prod = 1;
    for (auto s : g.basic_orbit_sizes()) prod *= s;
    CHECK(prod == g.order());
  }
}

TEST_CASE("copies share the stabilizer chain safely") {
  PermGroup s4(4, {Permutation::parse_cycles(4, "(1,2)"), Permutation::parse_cycles(4, "(1,2,3,4)")});
  PermGroup copy = s4;
  CHECK(copy.order() == 24);
  CHECK(s4.order() == 24);
  PermGroup later(4, {Permutation::parse_cycles(4, "(1,2,3)")});
  PermGroup later_copy = later;
  CHECK(later_copy.order() == 3);
}

TEST_CASE("automorphism group of e8 from brute force") {
  auto e8 = codes::e8();
  std::vector<std::uint64_t> gens(e8.basis().begin(), e8.basis().end());
  CHECK(oracle::count_automorphisms(gens, 8) == 1344);
  // group generated by all automorphisms found by brute force
  auto words = oracle::span(gens);
  std::vector<Permutation> auts;
  std::vector<int> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto g : gens) ok = ok && std::binary_search(words.begin(), words.end(), oracle::permute_word(g, perm));
    if (ok) auts.emplace_back(std::vector<Point>(perm.begin(), perm.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  PermGroup a(8, auts);
  CHECK(a.order() == 1344);
  auto t3 = prime_order_types(a, 3);
  CHECK(t3.exact);
  CHECK(t3.types == std::set<AutType>{{3, 2, 2}});
  auto t7 = prime_order_types(a, 7);
  CHECK(t7.types == std::set<AutType>{{7, 1, 1}});
  CHECK(prime_order_types(a, 5).types.empty());
  CHECK(to_string(AutType{7, 1, 1}) == "7-(1,1)");
  CHECK_THROWS_AS(prime_order_types(a, 9), ValidationError);
  // partial mode still finds the types
  auto partial = prime_order_types(a, 7, 10);
  CHECK_FALSE(partial.exact);
  CHECK(partial.types == t7.types);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) CHECK(a.contains(a.random_element(rng)));
}

}  // TEST_SUITE
