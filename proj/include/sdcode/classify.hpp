#pragma once

// Classification of doubly even self-dual codes certified by the mass
// formula, plus the reports built on a finished catalog.

#include "sdcode/bigint.hpp"
#include "sdcode/code.hpp"
#include "sdcode/errors.hpp"
#include "sdcode/perm_group.hpp"
#include "sdcode/record.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdc {

// Number of distinct doubly even self-dual codes of length n (n ≡ 0 mod 8).
BigInt mass(std::size_t n);
// Number of distinct self-dual codes of even length n.
BigInt self_dual_mass(std::size_t n);

struct MassAccount {
  std::size_t n = 0;
  BigInt expected;
  std::vector<std::pair<std::string, BigInt>> terms;  // (hash, n!/|Aut|)
  BigInt total;

  bool complete() const { return total == expected; }
  BigInt deficit() const { return expected - total; }
};

// Throws InvariantError if some |Aut| does not divide n!.
MassAccount mass_account(std::size_t n, const std::vector<CatalogRecord>& records, BigInt expected);
MassAccount mass_account(std::size_t n, const std::vector<CatalogRecord>& records);

class ClassificationIncomplete : public IncompleteError {
 public:
  ClassificationIncomplete(const std::string& what, BigInt deficit, std::size_t found)
      : IncompleteError(what), deficit_(std::move(deficit)), found_(found) {}
  const BigInt& deficit() const noexcept { return deficit_; }
  std::size_t classes_found() const noexcept { return found_; }

 private:
  BigInt deficit_;
  std::size_t found_;
};

enum class Method { neighbor, glue, lift_chain };
std::string to_string(Method m);
// Throws ValidationError for an unknown name.
Method parse_method(std::string_view name);

struct ClassifyOptions {
  Method method = Method::neighbor;
  unsigned threads = 1;
  // Progress is saved here after every shard, and resumed from when present.
  std::optional<std::filesystem::path> checkpoint_dir;
  // Shards processed in this run before stopping with ClassificationIncomplete;
  // 0 = no limit. Length 40 requires a limit.
  std::size_t shard_budget = 0;
  std::function<void(const std::string&)> log;
};

struct Classification {
  std::vector<CatalogRecord> records;  // catalog order
  MassAccount account;
};

// n ∈ {8, 16, 24, 32} (40 with a shard budget). The glue method takes
// n ∈ {16, 24}. Throws ClassificationIncomplete unless the account closes.
Classification classify_doubly_even(std::size_t n, const ClassifyOptions& opts = {});

// All self-dual codes of even length n by neighbor closure from i2^{n/2},
// certified by self_dual_mass.
Classification classify_self_dual(std::size_t n, unsigned threads = 1);

struct CoveringRadiusResult {
  std::size_t radius = 0;
  Word witness = 0;                        // a coset leader of weight `radius`
  std::vector<std::uint64_t> layer_sizes;  // cosets per leader weight
};

inline constexpr std::size_t kMaxSyndromeBits = 26;

// Breadth-first search over the syndrome space; BudgetError when
// n - dim exceeds kMaxSyndromeBits.
CoveringRadiusResult covering_radius(const LinearCode& c);
// Smallest R with sum_{t<=R} C(n,t) >= 2^(n-k).
std::size_t sphere_covering_bound(std::size_t n, std::size_t k);

// λ if every coordinate lies in exactly λ codewords of weight w.
std::optional<std::uint64_t> design_check(const LinearCode& c, std::size_t w);
// Rank of the set of weight-8 codewords.
std::size_t weight8_subcode_dim(const LinearCode& c);

struct Census {
  std::size_t n = 0;
  std::size_t codes = 0;
  std::map<std::uint64_t, std::size_t> a4;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> covering;  // (d, R)
  std::map<BigInt, std::size_t> aut_orders;
  std::map<AutType, std::size_t> prime_types;  // codes having an element of each type
  bool prime_types_exact = true;
  std::map<std::size_t, std::size_t> weight8_dims;
};

Census census(const std::vector<CatalogRecord>& records, unsigned threads = 1);
std::string census_tsv(const Census& c);

struct SubtractedCode {
  CatalogRecord record;
  // 1 or 2 for the two length-38 weight enumerators (A8 = 171, 203), else 0.
  int we_class = 0;
  std::size_t shadow_min_weight = 0;
};

// Subtracts every admissible pair of each input and keeps the inequivalent
// results of minimum weight >= t (t = 0 picks the extremal bound at n-2). At
// length 40 the inputs need A4 <= 1 and the weight-8 Gram filter is used.
std::vector<SubtractedCode> extremal_subtraction(const std::vector<LinearCode>& inputs, std::size_t t = 0,
                                                 unsigned threads = 1);

}  // namespace sdc
