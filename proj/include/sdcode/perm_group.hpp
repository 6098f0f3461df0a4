#pragma once

#include "sdcode/bigint.hpp"
#include "sdcode/permutation.hpp"

#include <compare>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <vector>

namespace sdc {

// A permutation group given by generators. The stabilizer chain is built on
// first use by deterministic Schreier-Sims; afterwards the group is read-only.
class PermGroup {
 public:
  explicit PermGroup(std::size_t degree, std::vector<Permutation> generators = {},
                     std::vector<Point> base_prefix = {});

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  BigInt order() const;
  bool contains(const Permutation& p) const;

  std::vector<Point> base() const;
  std::vector<std::size_t> basic_orbit_sizes() const;
  // Orbit of a point under the generators, sorted.
  std::vector<Point> orbit(Point b) const;

  // Visits every element once; stop early by returning false.
  void for_each_element(const std::function<bool(const Permutation&)>& visit) const;
  // Uniformly random element (product of random transversal elements).
  Permutation random_element(std::mt19937_64& rng) const;

 private:
  struct Chain;
  struct Holder;
  const Chain& chain() const;

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Point> base_prefix_;
  std::shared_ptr<Holder> holder_;
};

// Automorphism of odd prime order p with c p-cycles and f fixed points.
struct AutType {
  unsigned p = 0;
  unsigned c = 0;
  unsigned f = 0;
  friend auto operator<=>(const AutType&, const AutType&) = default;
};

std::string to_string(const AutType& t);  // "p-(c,f)"

struct PrimeTypeCensus {
  std::set<AutType> types;
  bool exact = true;  // false: a lower bound from sampled elements
};

inline constexpr std::uint64_t kDefaultElementBudget = 1'000'000;

// Types p-(c,f) realized by elements of order p. Exhaustive when the group
// order is within `element_budget`; otherwise generators, seeded random
// elements and their powers are inspected and the result is flagged partial.
PrimeTypeCensus prime_order_types(const PermGroup& g, unsigned p,
                                  std::uint64_t element_budget = kDefaultElementBudget,
                                  std::size_t samples = 4000);

}  // namespace sdc
