#pragma once

// Quadratic spaces over GF(2): the quotient C⊥/C of a doubly even code with
// q(x + C) = wt(x)/2 mod 2, its isometries and orthogonal groups.

#include "sdcode/bigint.hpp"
#include "sdcode/code.hpp"
#include "sdcode/perm_group.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdc {

// Vectors of a k-dimensional space are bit masks (bit i = coordinate i), k <= 64.
using QVec = std::uint64_t;

struct QuadraticForm {
  std::size_t k = 0;
  std::vector<std::uint8_t> q;  // q on basis vectors
  std::vector<QVec> b;          // bilinear form, row i as a mask

  bool eval(QVec v) const noexcept;
  bool bilinear(QVec x, QVec y) const noexcept;
  bool nondegenerate() const;
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

enum class FormType { plus, minus };
std::string to_string(FormType t);

// The standard form of dimension k: hyperbolic planes (e_i, f_i) on
// coordinates (2i, 2i+1); for minus type the last plane is anisotropic.
QuadraticForm standard_form(std::size_t k, FormType t);

// A linear map between k-dimensional spaces given by the images of the basis
// vectors. Composition a * b applies b first (ordinary function composition).
class Isometry {
 public:
  Isometry() = default;
  explicit Isometry(std::vector<QVec> columns);
  static Isometry identity(std::size_t k);

  std::size_t dim() const noexcept { return cols_.size(); }
  const std::vector<QVec>& columns() const noexcept { return cols_; }
  QVec apply(QVec v) const noexcept;
  bool invertible() const;
  Isometry inverse() const;
  bool is_identity() const noexcept;
  // True iff target.eval(f(v)) == source.eval(v) for every v (exhaustive for
  // k <= 16, otherwise checked on the basis plus the bilinear form).
  bool preserves(const QuadraticForm& source, const QuadraticForm& target) const;
  // Row-major bits, one line of k characters per row.
  std::string to_string() const;
  // Row-major bit string, used as an ordering key.
  std::vector<std::uint8_t> row_major() const;

  friend Isometry operator*(const Isometry& a, const Isometry& b);
  friend bool operator==(const Isometry&, const Isometry&) = default;
  friend std::strong_ordering operator<=>(const Isometry& a, const Isometry& b);

 private:
  std::vector<QVec> cols_;
};

struct StandardForm {
  // Columns are the standard basis vectors written in the source coordinates,
  // so change_of_basis maps the standard form isometrically onto the source.
  Isometry change_of_basis;
  FormType type = FormType::plus;
  std::size_t witt_index = 0;
};

// Throws ValidationError for odd k or a degenerate form.
StandardForm standardize(const QuadraticForm& f);
// Arf type by counting zeros of q.
FormType arf_type_by_count(const QuadraticForm& f);

// |O±(k,2)| for even k.
BigInt orthogonal_group_order(std::size_t k, FormType t);

// Generators of the full orthogonal group of f: orthogonal transvections
// x -> x + b(x,v) v for anisotropic v, added until the order is reached (the
// O+(4,2) case needs an extra element found by search).
std::vector<Isometry> orthogonal_group_gens(const QuadraticForm& f);

// Order of the matrix group generated by `gens` (acting on nonzero vectors).
BigInt matrix_group_order(std::size_t k, const std::vector<Isometry>& gens);

struct QuotientSpace {
  LinearCode code;
  LinearCode dual;
  std::vector<Word> reps;  // basis of a complement of C in C⊥, reduced mod C
  std::vector<std::size_t> rep_pivots;
  QuadraticForm form;

  std::size_t dim() const noexcept { return reps.size(); }
  // Coordinates of x + C for x in C⊥.
  QVec coords(Word x) const;
  // The representative sum of reps selected by v.
  Word word(QVec v) const noexcept;
};

// Requires C doubly even and containing the all-one vector.
QuotientSpace quotient_space(const LinearCode& c);

// 𝒢₁(C): the full isometry group of the quotient.
std::vector<Isometry> isometry_group_gens(const QuotientSpace& q);
// 𝒢₀(C): maps induced by permutations preserving C (identity images dropped).
std::vector<Isometry> induced_group_gens(const QuotientSpace& q, const std::vector<Permutation>& auts);
Isometry induced_isometry(const QuotientSpace& q, const Permutation& p);

// An isometry between the two quotients if one exists.
std::optional<Isometry> find_isometry(const QuadraticForm& a, const QuadraticForm& b);
std::optional<Isometry> find_isometry(const QuotientSpace& a, const QuotientSpace& b);

// All elements of the group generated by gens, sorted.
std::vector<Isometry> enumerate_group(std::size_t k, const std::vector<Isometry>& gens,
                                      std::uint64_t budget = 100'000'000);

struct DoubleCosets {
  std::vector<Isometry> reps;  // least element of each class, classes sorted by it
  std::vector<std::uint64_t> class_sizes;
  std::uint64_t ambient_order = 0;
  bool complete = true;
};

// Representatives of left \ ambient / right, with x ~ h x h'. When the ambient
// closure exceeds `budget`, throws BudgetError unless `partial` is set, in
// which case the classes of the elements reached so far are returned with
// complete = false.
DoubleCosets double_coset_reps(std::size_t k, const std::vector<Isometry>& left,
                               const std::vector<Isometry>& right, const std::vector<Isometry>& ambient,
                               std::uint64_t budget = 100'000'000, bool partial = false);

}  // namespace sdc
