#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace weilcalc {

/// Absolute tolerance for span closure, homomorphism and axiom validation.
inline constexpr double kDefaultTolerance = 1e-9;

class WeilAlgebra;
using AlgebraRef = std::shared_ptr<const WeilAlgebra>;

/// One nonzero structure constant: b_i * b_j has coefficient `c` on b_k.
struct StructureEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  double c;
};

/// Finite-dimensional commutative unital real algebra R (+) N with N
/// nilpotent, given by a basis and structure constants
/// b_i b_j = sum_k c[i][j][k] b_k. Immutable once created.
///
/// Every basis vector other than the unit spans the nilpotent ideal N.
/// Height is the largest h with N^h != 0; width is dim N / N^2 (the minimal
/// number of generators of N). Both are computed, never trusted from input.
class WeilAlgebra {
 public:
  /// Validates commutativity, associativity, the unit law, that the
  /// non-unit basis spans a nilpotent ideal, and throws InvalidAlgebra with
  /// the violating basis triple otherwise. `structure` is dense, dim^3,
  /// indexed [(i * dim + j) * dim + k].
  static AlgebraRef create(std::string name, std::vector<std::string> basis, std::size_t unit_index,
                           std::vector<double> structure, double tol = kDefaultTolerance);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<std::string>& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t unit_index() const noexcept { return unit_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::size_t height() const noexcept { return height_; }

  [[nodiscard]] double c(std::size_t i, std::size_t j, std::size_t k) const {
    return structure_[(i * dim() + j) * dim() + k];
  }
  [[nodiscard]] std::span<const double> structure() const noexcept { return structure_; }
  [[nodiscard]] std::span<const StructureEntry> entries() const noexcept { return entries_; }

  /// True when every structure constant is an integer, so all products of
  /// integer coefficient vectors are computed exactly.
  [[nodiscard]] bool exact() const noexcept { return exact_; }

  /// Same dimension, unit position and structure constants. Names and
  /// labels are ignored: this is the identity of the algebra for matrices.
  [[nodiscard]] bool same_structure(const WeilAlgebra& other) const noexcept;

 private:
  WeilAlgebra() = default;

  std::string name_;
  std::vector<std::string> basis_;
  std::size_t unit_ = 0;
  std::vector<double> structure_;
  std::vector<StructureEntry> entries_;
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  bool exact_ = true;
};

/// Pointer identity or structural identity.
bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) noexcept;

// Constructors of the basic algebras.

AlgebraRef reals();
AlgebraRef dual();
/// R[x_1..x_k] / (monomials of degree > r), graded monomial basis
/// (degree 0, then degree 1, ... ; lexicographic within a degree).
AlgebraRef truncated(std::size_t k, std::size_t r);
/// Product basis with the first factor's index varying fastest:
/// b_i (x) c_j sits at i + dim(A) * j.
AlgebraRef tensor(const AlgebraRef& a, const AlgebraRef& b);
/// R x N_A x N_B with N_A N_B = 0.
AlgebraRef sum(const AlgebraRef& a, const AlgebraRef& b);

/// Exponent vectors of the monomial basis of truncated(k, r), in basis order.
std::vector<std::vector<int>> monomial_exponents(std::size_t k, std::size_t r);

/// Position of the monomial with the given exponents in truncated(k, r).
std::size_t monomial_index(std::span<const int> exponents, std::size_t r);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace weilcalc
