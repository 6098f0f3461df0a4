#pragma once

// Code equivalence under coordinate permutations: canonical forms,
// automorphism groups, and cheap invariant fingerprints.

#include "sdcode/bigint.hpp"
#include "sdcode/code.hpp"
#include "sdcode/perm_group.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sdc {

// Integer Gram matrix M^T M of the weight-w codewords.
struct DesignInvariant {
  std::size_t weight = 8;
  std::uint64_t word_count = 0;
  std::vector<std::vector<std::uint32_t>> gram;
  std::set<std::uint32_t> n_set;             // with the extremal-40 rule applied
  std::set<std::uint32_t> n_set_unfiltered;  // every entry value
  bool value_57_removed = false;
};

// For an extremal doubly even code of length 40 the value 57 is removed from
// the entry set; otherwise the set holds every entry.
DesignInvariant design_invariant(const LinearCode& c, std::size_t w = 8,
                                 std::size_t max_dim = kDefaultEnumerationDim);

struct Fingerprint {
  std::optional<BigInt> aut_order;
  std::uint64_t a4 = 0;
  std::uint32_t max_n = 0;
  std::uint32_t min_n = 0;
  std::size_t card_n = 0;
  WeightDistribution weights;
  // Each Gram row sorted, then the rows sorted.
  std::vector<std::vector<std::uint32_t>> gram_rows;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend std::strong_ordering operator<=>(const Fingerprint& a, const Fingerprint& b);
};

// Gram data always comes from the weight-8 words. aut_order is filled only
// when requested (it costs a canonical-labeling search).
Fingerprint fingerprint(const LinearCode& c, bool with_aut_order = false);

struct CanonicalOptions {
  std::size_t codeword_cap = 50000;
  std::size_t max_dim = kDefaultEnumerationDim;
  std::uint64_t max_nodes = 0;  // 0 = unlimited
};

struct CanonicalForm {
  LinearCode code;
  // Maps the input code onto `code`: permute(input, relabeling) == code.
  Permutation relabeling;
};

struct LabelingResult {
  CanonicalForm canonical;
  std::vector<Permutation> generators;  // verified automorphisms of the input
  BigInt orbit_product;                 // product of first-path orbit sizes
  std::uint64_t nodes = 0;
};

// Thrown errors: BudgetError when the distinguishing codeword set exceeds
// the cap or the node budget runs out.
LabelingResult canonical_labeling(const LinearCode& c, const CanonicalOptions& opts = {});
CanonicalForm canonical_form(const LinearCode& c, const CanonicalOptions& opts = {});
PermGroup automorphism_group(const LinearCode& c, const CanonicalOptions& opts = {});

// A permutation p with permute(a, p) == b, verified, or nothing.
std::optional<Permutation> is_equivalent(const LinearCode& a, const LinearCode& b,
                                         const CanonicalOptions& opts = {});

std::string sha256_hex(std::string_view data);
// SHA-256 of the GM text of the canonical form.
std::string canonical_hash(const LinearCode& canonical);

struct ClassRep {
  LinearCode canonical;
  std::string hash;
  Fingerprint fingerprint;  // aut_order filled
  std::vector<Permutation> aut_generators;
  std::size_t first_index = 0;  // smallest input index in the class
  std::size_t multiplicity = 0;
};

// One representative per equivalence class, sorted by fingerprint and then
// by canonical GM bytes. The result does not depend on the input order apart
// from first_index.
std::vector<ClassRep> dedup(const std::vector<LinearCode>& candidates, unsigned threads = 1,
                            const CanonicalOptions& opts = {});

}  // namespace sdc
