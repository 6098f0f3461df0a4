#pragma once

#include "sdcode/gf2.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdc {

using Point = std::uint32_t;

// A bijection on {0, ..., degree-1}; images()[i] is the image of point i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  explicit Permutation(std::vector<Point> images);

  // Cycles use 0-indexed points.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);
  // Parses 1-indexed cycle notation such as "(1,2,3)(4,5)"; "()" is the identity.
  static Permutation parse_cycles(std::size_t degree, std::string_view text);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  std::uint64_t order() const;
  // Lengths of all cycles, fixed points included, ascending.
  std::vector<std::size_t> cycle_type() const;

  // Moves bit i of v to bit images()[i]. Requires degree() <= 64.
  Word apply(Word v) const noexcept;
  BitVector apply(const BitVector& v) const;

  // 1-indexed cycle notation, identity prints as "()".
  std::string to_cycle_string() const;

  // (p * q)(x) = q(p(x)): p is applied first.
  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

}  // namespace sdc
