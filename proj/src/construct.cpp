#include "sdcode/construct.hpp"

#include "sdcode/equivalence.hpp"
#include "sdcode/errors.hpp"

#include <algorithm>
#include <numeric>

namespace sdc {

namespace {

void require_doubly_even_self_dual(const LinearCode& c, const char* who) {
  if (!is_self_dual(c)) throw ValidationError(std::string(who) + ": code is not self-dual");
  if (!is_doubly_even(c)) throw ValidationError(std::string(who) + ": code is not doubly even");
}

// Bits of v at the listed coordinates, packed in order.
Word gather(Word v, const std::vector<std::size_t>& coords) {
  Word r = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if ((v >> coords[i]) & 1) r |= Word{1} << i;
  return r;
}

}  // namespace

LinearCode bp_lift(const LinearCode& c) {
  const std::size_t n = c.length();
  if (n % 8 != 6) throw ValidationError("bp_lift: length must be 6 mod 8");
  if (!is_self_dual(c)) throw ValidationError("bp_lift: code is not self-dual");
  if (is_doubly_even(c)) throw ValidationError("bp_lift: code is not singly even");
  if (n + 2 > kMaxCodeLength) throw ValidationError("bp_lift: result longer than 64");
  auto sd = shadow(c);
  const Word b10 = Word{1} << n, b01 = Word{1} << (n + 1);
  for (Word rep : {sd.c1_rep, sd.c3_rep}) {
    std::vector<Word> rows(sd.c0.basis().begin(), sd.c0.basis().end());
    rows.push_back(sd.c2_rep | b10 | b01);
    rows.push_back(rep | b10);
    LinearCode lifted(n + 2, rows);
    if (is_self_dual(lifted) && is_doubly_even(lifted)) return lifted;
  }
  throw InvariantError("bp_lift: neither labeling gives a doubly even code");
}

void validate_glue(const GlueSpec& spec) {
  const auto &c1 = spec.c1, &c2 = spec.c2;
  std::size_t n1 = c1.length(), n2 = c2.length();
  if (n1 + n2 > kMaxCodeLength) throw ValidationError("glue: combined length exceeds 64");
  if (n1 + 2 * c2.dimension() != n2 + 2 * c1.dimension())
    throw ValidationError("glue: n1 - n2 must equal 2(dim C1 - dim C2)");
  if (n1 % 8 != n2 % 8) throw ValidationError("glue: n1 and n2 differ mod 8");
  auto q1 = quotient_space(c1);
  auto q2 = quotient_space(c2);
  if (spec.f.dim() != q1.dim() || !spec.f.preserves(q1.form, q2.form))
    throw ValidationError("glue: f is not an isometry between the quotients");
}

LinearCode glue(const GlueSpec& spec) {
  validate_glue(spec);
  auto q1 = quotient_space(spec.c1);
  auto q2 = quotient_space(spec.c2);
  const std::size_t n1 = spec.c1.length();
  std::vector<Word> rows(spec.c1.basis().begin(), spec.c1.basis().end());
  for (Word w : spec.c2.basis()) rows.push_back(w << n1);
  for (std::size_t i = 0; i < q1.dim(); ++i) rows.push_back(q1.reps[i] | (q2.word(spec.f.apply(QVec{1} << i)) << n1));
  LinearCode d(n1 + spec.c2.length(), rows);
  if (!is_self_dual(d) || !is_doubly_even(d)) throw InvariantError("glue: result is not doubly even self-dual");
  return d;
}

GlueFamily glue_family(const LinearCode& c1, const LinearCode& c2, std::uint64_t budget) {
  GlueFamily fam;
  auto q1 = quotient_space(c1);
  auto q2 = quotient_space(c2);
  auto f = find_isometry(q1, q2);
  if (!f) return fam;
  auto g0_1 = induced_group_gens(q1, canonical_labeling(c1).generators);
  auto g0_2 = induced_group_gens(q2, canonical_labeling(c2).generators);
  std::vector<Isometry> left;
  Isometry finv = f->inverse();
  for (const auto& h : g0_2) left.push_back(finv * h * *f);
  auto g1 = isometry_group_gens(q1);
  auto dc = double_coset_reps(q1.dim(), left, g0_1, g1, budget);
  fam.ambient_order = dc.ambient_order;
  for (const auto& g : dc.reps) {
    Isometry h = *f * g;
    fam.codes.push_back(glue(GlueSpec{c1, c2, h}));
    fam.maps.push_back(std::move(h));
  }
  return fam;
}

Decomposition decompose_at(const LinearCode& c, Word x) {
  require_doubly_even_self_dual(c, "decompose_at");
  if (x == 0 || !c.contains(x)) throw ValidationError("decompose_at: x is not a nonzero codeword");
  const std::size_t n = c.length();
  std::vector<std::size_t> s, t;
  for (std::size_t i = 0; i < n; ++i) ((x >> i) & 1 ? s : t).push_back(i);
  if (t.empty()) throw ValidationError("decompose_at: x is the all-one vector");
  LinearCode c1 = shorten(c, t);
  LinearCode c2 = shorten(c, s);
  auto q1 = quotient_space(c1);
  auto q2 = quotient_space(c2);

  // elimination on (projection to supp(x), full word) pairs
  std::vector<std::pair<Word, Word>> rows;
  for (Word b : c.basis()) rows.emplace_back(gather(b, s), b);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t col = 0; col < s.size() && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && !((rows[p].first >> col) & 1)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && ((rows[i].first >> col) & 1)) {
        rows[i].first ^= rows[r].first;
        rows[i].second ^= rows[r].second;
      }
    piv.push_back(col);
    ++r;
  }
  std::vector<QVec> cols;
  for (Word rep : q1.reps) {
    Word target = rep, full = 0;
    for (std::size_t i = 0; i < piv.size(); ++i)
      if ((target >> piv[i]) & 1) {
        target ^= rows[i].first;
        full ^= rows[i].second;
      }
    if (target) throw InvariantError("decompose_at: representative not in the projection of C");
    cols.push_back(q2.coords(gather(full, t)));
  }
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < s.size(); ++i) img[s[i]] = static_cast<Point>(i);
  for (std::size_t j = 0; j < t.size(); ++j) img[t[j]] = static_cast<Point>(s.size() + j);
  Decomposition dec{GlueSpec{std::move(c1), std::move(c2), Isometry(std::move(cols))}, Permutation(std::move(img))};
  validate_glue(dec.spec);
  return dec;
}

std::map<std::size_t, std::uint64_t> shortened_dim_profile(const LinearCode& c, std::size_t w) {
  std::map<std::size_t, std::uint64_t> profile;
  for (Word x : codewords_of_weight(c, w)) {
    std::vector<Word> proj;
    for (Word b : c.basis()) proj.push_back(b & ~x);
    std::size_t rank = words::rref(proj, c.length()).size();
    ++profile[c.dimension() - rank];
  }
  return profile;
}

NeighborSpace::NeighborSpace(const LinearCode& c) : code_(c) {
  if (!is_self_dual(c)) throw ValidationError("neighbors: code is not self-dual");
  const std::size_t n = c.length();
  for (std::size_t i = 1; i < n; ++i) reps_.push_back(c.reduce(Word{1} | (Word{1} << i)));
  pivots_ = words::rref(reps_, n);
}

Word NeighborSpace::vector(std::uint64_t index) const noexcept {
  Word u = 0;
  for (std::uint64_t a = index; a; a &= a - 1) u ^= reps_[__builtin_ctzll(a)];
  return u;
}

std::uint64_t NeighborSpace::index(Word u) const {
  Word r = code_.reduce(u);
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if ((r >> pivots_[i]) & 1) t |= std::uint64_t{1} << i;
  if (vector(t) != r) throw ValidationError("neighbors: vector has odd weight");
  return t;
}

std::vector<std::uint64_t> NeighborSpace::orbit_representatives(const std::vector<Permutation>& auts) const {
  const std::size_t m = dim();
  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::uint32_t> image(total);
  for (const auto& g : auts) {
    std::vector<std::uint64_t> basis_img(m);
    for (std::size_t i = 0; i < m; ++i) basis_img[i] = index(g.apply(reps_[i]));
    image[0] = 0;
    for (std::uint64_t t = 1; t < total; ++t)
      image[t] = image[t & (t - 1)] ^ static_cast<std::uint32_t>(basis_img[__builtin_ctzll(t)]);
    for (std::uint64_t t = 1; t < total; ++t) {
      std::uint32_t a = find(static_cast<std::uint32_t>(t)), b = find(image[t]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::uint64_t> reps;
  for (std::uint64_t t = 1; t < total; ++t)
    if (find(static_cast<std::uint32_t>(t)) == t) reps.push_back(t);
  return reps;
}

namespace {

// B = C ∩ u⊥ as a basis, plus a codeword c0 with c0·u = 1.
std::pair<std::vector<Word>, Word> hyperplane(const LinearCode& c, Word u) {
  if (words::weight(u) % 2) throw ValidationError("neighbor: u has odd weight");
  if (c.contains(u)) throw ValidationError("neighbor: u lies in the code");
  std::vector<Word> b;
  Word c0 = 0;
  for (Word w : c.basis()) {
    if (!words::dot(w, u)) {
      b.push_back(w);
    } else if (!c0) {
      c0 = w;
    } else {
      b.push_back(w ^ c0);
    }
  }
  if (!c0) throw ValidationError("neighbor: u is orthogonal to the code");
  return {b, c0};
}

}  // namespace

LinearCode neighbor_at(const LinearCode& c, Word u) {
  auto [b, c0] = hyperplane(c, u);
  Word lifted = words::weight(u) % 4 == 0 ? u : u ^ c0;
  b.push_back(lifted);
  LinearCode d(c.length(), b);
  if (!is_self_dual(d) || !is_doubly_even(d)) throw ValidationError("neighbor: input is not doubly even self-dual");
  return d;
}

std::pair<LinearCode, LinearCode> self_dual_neighbors_at(const LinearCode& c, Word u) {
  auto [b, c0] = hyperplane(c, u);
  auto b2 = b;
  b.push_back(u);
  b2.push_back(u ^ c0);
  LinearCode d1(c.length(), b), d2(c.length(), b2);
  if (!is_self_dual(d1) || !is_self_dual(d2)) throw ValidationError("neighbor: input is not self-dual");
  return {d1, d2};
}

std::vector<LinearCode> neighbor_step(const LinearCode& c) {
  require_doubly_even_self_dual(c, "neighbor_step");
  NeighborSpace space(c);
  std::vector<LinearCode> out;
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << space.dim()); ++t) out.push_back(neighbor_at(c, space.vector(t)));
  return out;
}

LinearCode random_neighbor(const LinearCode& c, std::mt19937_64& rng) {
  NeighborSpace space(c);
  std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << space.dim()) - 1);
  return neighbor_at(c, space.vector(pick(rng)));
}

std::size_t extremal_bound(std::size_t n) { return 4 * (n / 24) + 4 + (n % 24 == 22 ? 2 : 0); }

std::vector<CoordPair> min_weight_pairs(const LinearCode& d, std::size_t t) {
  const std::size_t n = d.length();
  const auto& wd = d.weights();
  std::vector<std::vector<char>> bad(n, std::vector<char>(n, 0));
  for (std::size_t w = 1; w < t + 2 && w <= n; ++w) {
    if (!wd[w]) continue;
    auto g = design_invariant(d, w).gram;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        // a word with 11 at (i,j) drops to weight w-2 (a weight-2 word vanishes)
        if (w > 2 && g[i][j] > 0) bad[i][j] = 1;
        // a word with 00 at (i,j) keeps weight w
        if (w < t && wd[w] + g[i][j] > g[i][i] + g[j][j]) bad[i][j] = 1;
      }
  }
  std::vector<CoordPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!bad[i][j]) {
        if (min_weight(subtract(d, i, j)) < t) throw InvariantError("pair filter admitted a pair that fails");
        out.emplace_back(i, j);
      }
  return out;
}

std::vector<CoordPair> subtraction_candidates(const LinearCode& d) {
  require_doubly_even_self_dual(d, "subtraction_candidates");
  const std::size_t n = d.length();
  auto a4 = d.weights()[4];
  if (a4 >= 2) throw ValidationError("subtraction_candidates: A4 = " + std::to_string(a4) + " exceeds 1");
  Word x = a4 ? codewords_of_weight(d, 4).front() : 0;
  auto g = design_invariant(d, 8).gram;
  std::vector<CoordPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g[i][j] != 0) continue;
      if (a4 && ((x >> i) & 1) == ((x >> j) & 1)) continue;
      if (min_weight(subtract(d, i, j)) < 8) throw InvariantError("subtraction candidate fails verification");
      out.emplace_back(i, j);
    }
  return out;
}

}  // namespace sdc
