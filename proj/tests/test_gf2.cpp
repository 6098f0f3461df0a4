#include "doctest.h"
#include "oracles.hpp"

#include "sdcode/gf2.hpp"

#include <random>

using namespace sdc;

namespace {

GF2Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  GF2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1) m.set(i, j);
  return m;
}

std::vector<oracle::Row> to_rows(const GF2Matrix& m) {
  std::vector<oracle::Row> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    oracle::Row r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m.get(i, j);
    out.push_back(r);
  }
  return out;
}

bool is_rref(const Echelon& e) {
  const auto& r = e.reduced;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    auto lead = r.row(i).first_set();
    if (!lead || *lead != e.pivots[i]) return false;
    if (i > 0 && e.pivots[i] <= e.pivots[i - 1]) return false;
    for (std::size_t k = 0; k < r.rows(); ++k)
      if (k != i && r.get(k, e.pivots[i])) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("gf2core") {

TEST_CASE("bitvector basics and padding") {
  auto v = BitVector::from_string("10110");
  CHECK(v.size() == 5);
  CHECK(v.weight() == 3);
  CHECK(v.to_string() == "10110");
  CHECK(v.first_set() == 0u);
  auto w = BitVector::from_word(5, ~Word{0});
  CHECK(w.weight() == 5);
  CHECK(w.words()[0] == 0b11111u);
  BitVector big(130);
  big.set(129);
  big.set(64);
  CHECK(big.weight() == 2);
  CHECK(big.first_set() == 64u);
  CHECK(BitVector::from_string("01") < BitVector::from_string("10"));
}

TEST_CASE("weight identity with popcount_and") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 150;
    BitVector v(n), w(n);
    std::size_t loop = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool a = rng() & 1, b = rng() & 1;
      v.set(i, a);
      w.set(i, b);
      loop += a && b;
    }
    CHECK(popcount_and(v, w) == loop);
    CHECK((v ^ w).weight() + 2 * popcount_and(v, w) == v.weight() + w.weight());
    CHECK(dot(v, w) == (loop % 2 == 1));
  }
  CHECK(popcount_and(BitVector::from_string("11110000"), BitVector::from_string("11110000")) == 4);
  CHECK(popcount_and(BitVector::from_string("11110000"), BitVector::from_string("00001111")) == 0);
}

TEST_CASE("rref trivial cases") {
  auto id = GF2Matrix::identity(3);
  auto e = rref(id);
  CHECK(e.reduced == id);
  CHECK(e.rank == 3);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1, 2});
  GF2Matrix z(2, 5);
  auto ez = rref(z);
  CHECK(ez.rank == 0);
  CHECK(ez.pivots.empty());
}

TEST_CASE("rref rank agrees with naive elimination on random 6x10") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    auto m = random_matrix(rng, 6, 10);
    auto e = rref(m);
    CHECK(e.rank == oracle::rank(to_rows(m)));
    CHECK(is_rref(e));
    // idempotence
    auto e2 = rref(e.reduced);
    CHECK(e2.reduced == e.reduced);
    // invariant under row permutation
    GF2Matrix rev(m.cols(), std::vector<BitVector>{});
    for (std::size_t i = m.rows(); i-- > 0;) rev.append_row(m.row(i));
    CHECK(rref(rev).reduced == e.reduced);
    // same row space: stacking does not raise the rank
    GF2Matrix both = m;
    for (std::size_t i = 0; i < e.reduced.rows(); ++i) both.append_row(e.reduced.row(i));
    CHECK(rank(both) == e.rank);
  }
}

TEST_CASE("kernel") {
  CHECK(kernel(GF2Matrix::identity(5)).rows() == 0);
  auto k = kernel(GF2Matrix::from_strings({"1111"}));
  CHECK(k.rows() == 3);
  for (auto s : {"1100", "0110", "0011"}) {
    GF2Matrix stacked = k;
    stacked.append_row(BitVector::from_string(s));
    CHECK(rank(stacked) == 3);
  }
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    auto m = random_matrix(rng, 5, 12);
    auto ker = kernel(m);
    CHECK(ker.cols() == 12);
    CHECK(ker.rows() + rank(m) == 12);
    for (std::size_t i = 0; i < ker.rows(); ++i)
      for (std::size_t r = 0; r < m.rows(); ++r) CHECK_FALSE(dot(ker.row(i), m.row(r)));
    CHECK(rref(ker).reduced == ker);
  }
}

TEST_CASE("transpose and multiply") {
  std::mt19937_64 rng(3);
  auto m = random_matrix(rng, 7, 9);
  CHECK(m.transpose().transpose() == m);
  BitVector v(9);
  v.set(2);
  v.set(5);
  auto mv = m.multiply(v);
  for (std::size_t i = 0; i < 7; ++i) CHECK(mv.test(i) == (m.get(i, 2) != m.get(i, 5)));
}

TEST_CASE("word-level rref") {
  std::vector<Word> rows{0b1100, 0b0110, 0b1010, 0};
  auto piv = words::rref(rows, 4);
  CHECK(rows.size() == 2);
  CHECK(piv == std::vector<std::size_t>{1, 2});
  CHECK(words::reduce(0b1010, rows, piv) == 0);
  CHECK(words::reduce(0b0001, rows, piv) == 0b0001);
}

}  // TEST_SUITE
