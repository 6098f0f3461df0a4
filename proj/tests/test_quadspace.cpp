#include "doctest.h"

#include "sdcode/equivalence.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/quadspace.hpp"
#include "sdcode/standard_codes.hpp"

#include <random>
#include <set>

using namespace sdc;

namespace {

QuadraticForm random_form(std::mt19937_64& rng, std::size_t k) {
  while (true) {
    QuadraticForm f;
    f.k = k;
    f.q.resize(k);
    f.b.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      f.q[i] = rng() & 1;
      for (std::size_t j = i + 1; j < k; ++j)
        if (rng() & 1) {
          f.b[i] |= QVec{1} << j;
          f.b[j] |= QVec{1} << i;
        }
    }
    if (f.nondegenerate()) return f;
  }
}

// Exhaustive count over all k x k matrices.
std::uint64_t brute_orthogonal_order(const QuadraticForm& f) {
  const std::size_t k = f.k;
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (k * k)); ++m) {
    std::vector<QVec> cols(k);
    for (std::size_t c = 0; c < k; ++c) cols[c] = (m >> (c * k)) & ((QVec{1} << k) - 1);
    Isometry g(cols);
    if (g.preserves(f, f)) ++count;
  }
  return count;
}

std::set<Isometry> closure_set(std::size_t k, const std::vector<Isometry>& gens) {
  auto all = enumerate_group(k, gens);
  return {all.begin(), all.end()};
}

}  // namespace

TEST_SUITE("quadspace") {

TEST_CASE("standard forms and Arf type") {
  QuadraticForm hyp = standard_form(2, FormType::plus);
  auto s = standardize(hyp);
  CHECK(s.type == FormType::plus);
  CHECK(s.witt_index == 1);
  QuadraticForm an = standard_form(2, FormType::minus);
  CHECK(an.eval(1));
  CHECK(an.eval(2));
  CHECK(an.eval(3));
  CHECK(standardize(an).type == FormType::minus);
  CHECK(standardize(an).witt_index == 0);
  CHECK_THROWS_AS(standardize(QuadraticForm{1, {0}, {0}}), ValidationError);
  std::mt19937_64 rng(77);
  for (int t = 0; t < 200; ++t) {
    std::size_t k = 2 * (1 + rng() % 4);
    auto f = random_form(rng, k);
    auto sf = standardize(f);
    CHECK(sf.type == arf_type_by_count(f));
    CHECK(sf.change_of_basis.preserves(standard_form(k, sf.type), f));
    CHECK(sf.witt_index == (sf.type == FormType::plus ? k / 2 : k / 2 - 1));
  }
}

TEST_CASE("isometry algebra") {
  std::mt19937_64 rng(5);
  auto f = random_form(rng, 6);
  auto gens = orthogonal_group_gens(f);
  REQUIRE(gens.size() >= 2);
  auto a = gens[0], b = gens[1];
  CHECK((a * a.inverse()).is_identity());
  CHECK((a * b).apply(5) == a.apply(b.apply(5)));
  CHECK((a * b).preserves(f, f));
  CHECK(Isometry::identity(3).to_string() == "100\n010\n001\n");
}

TEST_CASE("orthogonal group orders agree with exhaustive GL(k,2) counts") {
  CHECK(orthogonal_group_order(2, FormType::plus) == 2);
  CHECK(orthogonal_group_order(2, FormType::minus) == 6);
  CHECK(orthogonal_group_order(4, FormType::plus) == 72);
  CHECK(orthogonal_group_order(4, FormType::minus) == 120);
  CHECK(orthogonal_group_order(6, FormType::plus) == 40320);
  std::mt19937_64 rng(9);
  for (auto t : {FormType::plus, FormType::minus})
    for (std::size_t k : {2u, 4u}) {
      // both the standard form and a random form of the same type
      std::vector<QuadraticForm> forms{standard_form(k, t)};
      while (forms.size() < 2) {
        auto f = random_form(rng, k);
        if (arf_type_by_count(f) == t) forms.push_back(f);
      }
      for (const auto& f : forms) {
        auto gens = orthogonal_group_gens(f);
        for (const auto& g : gens) CHECK(g.preserves(f, f));
        auto order = matrix_group_order(k, gens);
        CHECK(order == brute_orthogonal_order(f));
        CHECK(order == orthogonal_group_order(k, t));
        CHECK(enumerate_group(k, gens).size() == order);
      }
    }
  auto g6 = orthogonal_group_gens(standard_form(6, FormType::minus));
  CHECK(matrix_group_order(6, g6) == orthogonal_group_order(6, FormType::minus));
  auto g8 = orthogonal_group_gens(standard_form(8, FormType::plus));
  CHECK(matrix_group_order(8, g8) == orthogonal_group_order(8, FormType::plus));
}

TEST_CASE("quotient spaces of codes") {
  auto qe = quotient_space(codes::e8());
  CHECK(qe.dim() == 0);
  auto q1 = quotient_space(codes::all_ones_code(8));
  CHECK(q1.dim() == 6);
  CHECK(q1.form.nondegenerate());
  CHECK(standardize(q1.form).type == FormType::plus);
  CHECK_THROWS_AS(quotient_space(codes::i2()), ValidationError);
  CHECK_THROWS_AS(quotient_space(LinearCode(8, {0b1111})), ValidationError);

  // decomposable length-16 example: every element of every coset has the same q
  LinearCode c(16, {0x00FF, 0xFF00, 0x000F, 0x0F00});
  auto q = quotient_space(c);
  CHECK(q.dim() == 16 - 8);
  std::mt19937_64 rng(3);
  std::vector<Word> cw;
  for_each_codeword(c, [&](Word x) { cw.push_back(x); });
  for (QVec v = 0; v < (QVec{1} << q.dim()); ++v) {
    Word r = q.word(v);
    CHECK(q.coords(r) == v);
    for (Word x : cw) {
      CHECK(((words::weight(r ^ x) / 2) & 1) == q.form.eval(v));
      CHECK(q.coords(r ^ x) == v);
    }
  }
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j)
      CHECK(q.form.bilinear(QVec{1} << i, QVec{1} << j) == words::dot(q.reps[i], q.reps[j]));
}

TEST_CASE("induced groups") {
  auto q = quotient_space(codes::all_ones_code(4));
  CHECK(q.dim() == 2);
  std::vector<Permutation> s4{Permutation::parse_cycles(4, "(1,2)"), Permutation::parse_cycles(4, "(1,2,3,4)")};
  auto g0 = induced_group_gens(q, s4);
  auto g1 = isometry_group_gens(q);
  CHECK(matrix_group_order(2, g0) == matrix_group_order(2, g1));
  CHECK(matrix_group_order(2, g1) == 6);
  // every induced map of every element of S4 lies in G1
  PermGroup s4g(4, s4);
  auto full = closure_set(2, g1);
  s4g.for_each_element([&](const Permutation& p) {
    CHECK(full.count(induced_isometry(q, p)) == 1);
    return true;
  });
  // e8: Aut acts on a zero-dimensional quotient
  auto qe = quotient_space(codes::e8());
  CHECK(induced_group_gens(qe, automorphism_group(codes::e8()).generators()).empty());
  // a subcode of e8 with dim 3: G0 inside G1
  LinearCode sub(8, {codes::e8().all_ones(), 0b00001111, 0b00110011});
  auto qs = quotient_space(sub);
  auto g0s = induced_group_gens(qs, automorphism_group(sub).generators());
  auto g1s = closure_set(qs.dim(), isometry_group_gens(qs));
  for (const auto& g : g0s) CHECK(g1s.count(g) == 1);
  CHECK_THROWS_AS(induced_isometry(qs, Permutation::parse_cycles(8, "(1,8)")), ValidationError);
}

TEST_CASE("find isometry") {
  auto q1 = quotient_space(codes::all_ones_code(8));
  auto f = find_isometry(q1, q1);
  REQUIRE(f);
  CHECK(f->preserves(q1.form, q1.form));
  CHECK_FALSE(find_isometry(standard_form(2, FormType::plus), standard_form(2, FormType::minus)));
  CHECK_FALSE(find_isometry(quotient_space(codes::all_ones_code(8)), quotient_space(codes::e8())));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto a = random_form(rng, 6), b = random_form(rng, 6);
    auto iso = find_isometry(a, b);
    CHECK(iso.has_value() == (arf_type_by_count(a) == arf_type_by_count(b)));
    if (iso) CHECK(iso->preserves(a, b));
  }
  // length 8 <1> against a dimension-5 code of length 16
  LinearCode c16(16, {0xFFFF, 0x00FF, 0x000F, 0x0F00, 0x3333});
  REQUIRE(is_doubly_even(c16));
  auto q16 = quotient_space(c16);
  CHECK(q16.dim() == 6);
  auto g = find_isometry(q1, q16);
  REQUIRE(g);
  CHECK(g->preserves(q1.form, q16.form));
}

TEST_CASE("double cosets") {
  auto f4 = standard_form(4, FormType::plus);
  auto amb = orthogonal_group_gens(f4);
  auto d1 = double_coset_reps(4, amb, amb, amb);
  CHECK(d1.reps.size() == 1);
  CHECK(d1.class_sizes[0] == 72);
  auto d2 = double_coset_reps(4, {}, {}, amb);
  CHECK(d2.reps.size() == 72);

  std::mt19937_64 rng(2718);
  for (int t = 0; t < 50; ++t) {
    auto type = t % 2 ? FormType::plus : FormType::minus;
    std::size_t k = t % 5 == 0 ? 2 : 4;
    auto gens = orthogonal_group_gens(standard_form(k, type));
    auto all = enumerate_group(k, gens);
    auto pick = [&] {
      std::vector<Isometry> h;
      std::size_t cnt = rng() % 3;
      for (std::size_t i = 0; i < cnt; ++i) h.push_back(all[rng() % all.size()]);
      return h;
    };
    auto left = pick(), right = pick();
    auto dc = double_coset_reps(k, left, right, gens);
    std::uint64_t sum = 0;
    for (auto s : dc.class_sizes) sum += s;
    CHECK(sum == all.size());
    CHECK(dc.ambient_order == all.size());
    // brute force: each class is exactly H g H'
    auto hl = closure_set(k, left), hr = closure_set(k, right);
    std::set<Isometry> covered;
    for (std::size_t c = 0; c < dc.reps.size(); ++c) {
      std::set<Isometry> cls;
      for (const auto& a : hl)
        for (const auto& b : hr) cls.insert(a * dc.reps[c] * b);
      CHECK(cls.size() == dc.class_sizes[c]);
      CHECK(*cls.begin() == dc.reps[c]);
      for (const auto& x : cls) CHECK(covered.insert(x).second);
    }
    CHECK(covered.size() == all.size());
  }
  auto partial = double_coset_reps(4, {}, {}, amb, 10, true);
  CHECK_FALSE(partial.complete);
  CHECK_THROWS_AS(double_coset_reps(4, {}, {}, amb, 10), BudgetError);
}

}  // TEST_SUITE
