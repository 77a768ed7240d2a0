#pragma once

#include <cstdint>

#include "weilcalc/program.hpp"
#include "weilcalc/report.hpp"
#include "weilcalc/weil_functor.hpp"

namespace weilcalc {

/// kappa^A o T^A X on A^n. The tangent part at a is T^A X(a); the exchange
/// A (x) D -> D (x) A only reorders coefficients so that value reads as a
/// tangent vector on R^{n dim A}.
class ProlongedField {
 public:
  ProlongedField(AlgebraRef algebra, VectorField x);

  [[nodiscard]] const AlgebraRef& algebra() const noexcept { return algebra_; }
  [[nodiscard]] const VectorField& base_field() const noexcept { return x_; }
  /// The same field as a plain vector field on R^{n dim A}, coordinate-major.
  [[nodiscard]] const VectorField& rendered() const noexcept { return rendered_; }

  WeilPoint operator()(const WeilPoint& a) const;

 private:
  AlgebraRef algebra_;
  VectorField x_;
  VectorField rendered_;
};

ProlongedField field_prolong(const AlgebraRef& algebra, const VectorField& x);

/// T^A [X, Y] against [T^A X, T^A Y] at `samples` random points of
/// R^{n dim A} with coordinates in [-1, 1].
Report check_prolong_bracket(const AlgebraRef& algebra, const VectorField& x, const VectorField& y, std::size_t samples,
                          std::uint64_t seed, double tol);

}  // namespace weilcalc
