#pragma once

// Code constructions: the two-coordinate lift of a singly even code, glue
// codes over isometric quotients, neighbors, and coordinate subtraction.

#include "sdcode/code.hpp"
#include "sdcode/quadspace.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace sdc {

// Singly even self-dual C of length n ≡ 6 (mod 8) -> doubly even self-dual
// code of length n+2 built from C0 x 00, C2 x 11, C1 x 10, C3 x 01.
LinearCode bp_lift(const LinearCode& c);

// f maps quotient_space(c1) onto quotient_space(c2) (their basis coordinates).
struct GlueSpec {
  LinearCode c1;
  LinearCode c2;
  Isometry f;
};

// Throws ValidationError naming the violated condition.
void validate_glue(const GlueSpec& spec);
// {(x1, x2) : x1 ∈ C1⊥, x2 ∈ f(x1 + C1)}, coordinates of C1 first.
LinearCode glue(const GlueSpec& spec);

struct GlueFamily {
  std::vector<LinearCode> codes;  // one per double coset
  std::vector<Isometry> maps;     // the isometry used for each code
  std::uint64_t ambient_order = 0;
};

// Glue codes D(C1, C2, f g) with g over (f⁻¹ 𝒢₀(C2) f) \ 𝒢₁(C1) / 𝒢₀(C1).
// Empty when the quotients are not isometric.
GlueFamily glue_family(const LinearCode& c1, const LinearCode& c2, std::uint64_t budget = 100'000'000);

struct Decomposition {
  GlueSpec spec;
  // permute(C, placement) == glue(spec): supp(x) first, then the rest, each
  // in increasing coordinate order.
  Permutation placement;
};

Decomposition decompose_at(const LinearCode& c, Word x);

// dim of {c ∈ C : supp(c) ⊆ supp(x)} over the weight-w codewords x: dim -> count.
std::map<std::size_t, std::uint64_t> shortened_dim_profile(const LinearCode& c, std::size_t w);

// Cosets u + C of even vectors u, for a self-dual C (which contains 1).
// Index t in [0, 2^dim) selects u = Σ t_i r_i.
class NeighborSpace {
 public:
  explicit NeighborSpace(const LinearCode& c);
  std::size_t dim() const noexcept { return reps_.size(); }
  Word vector(std::uint64_t index) const noexcept;
  std::uint64_t index(Word u) const;
  // Coset indices that are least in their orbit under the permutations, 0 excluded.
  std::vector<std::uint64_t> orbit_representatives(const std::vector<Permutation>& auts) const;

 private:
  LinearCode code_;
  std::vector<Word> reps_;
  std::vector<std::size_t> pivots_;
};

// The doubly even neighbor B + u' with B = C ∩ u⊥; u even and not in C.
LinearCode neighbor_at(const LinearCode& c, Word u);
// Both self-dual neighbors B + u and B + u + c0 of a self-dual code.
std::pair<LinearCode, LinearCode> self_dual_neighbors_at(const LinearCode& c, Word u);
// Every doubly even neighbor of a doubly even self-dual code.
std::vector<LinearCode> neighbor_step(const LinearCode& c);
// Uniformly random doubly even neighbor.
LinearCode random_neighbor(const LinearCode& c, std::mt19937_64& rng);

// Largest possible minimum weight of a self-dual code of length n.
std::size_t extremal_bound(std::size_t n);

using CoordPair = std::pair<std::size_t, std::size_t>;

// Pairs i < j with min_weight(subtract(D, i, j)) >= t, decided from the Gram
// matrices of the codewords of weight below t+2, then each verified.
std::vector<CoordPair> min_weight_pairs(const LinearCode& d, std::size_t t);
// Pairs whose subtraction has minimum weight >= 8: zero weight-8 Gram entry
// and, when A4 = 1, the weight-4 word split 10/01. Requires a doubly even
// self-dual D with A4 <= 1.
std::vector<CoordPair> subtraction_candidates(const LinearCode& d);

}  // namespace sdc
