#pragma once

#include <span>
#include <vector>

#include "json.hpp"
#include "weilcalc/algebra.hpp"
#include "weilcalc/element.hpp"
#include "weilcalc/hom.hpp"
#include "weilcalc/program.hpp"

namespace weilcalc {

/// A point of T^A R^n = A^n: one algebra element per coordinate.
class WeilPoint {
 public:
  WeilPoint() = default;
  WeilPoint(AlgebraRef algebra, std::vector<AlgebraElement> coords);

  /// x * 1 in every coordinate.
  static WeilPoint real(AlgebraRef algebra, std::span<const double> x);
  /// Coordinate-major coefficients: coefficient k of coordinate i at i * dim + k.
  static WeilPoint from_flat(AlgebraRef algebra, std::span<const double> flat);

  [[nodiscard]] const AlgebraRef& algebra() const noexcept { return algebra_; }
  [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
  [[nodiscard]] const std::vector<AlgebraElement>& coords() const noexcept { return coords_; }
  const AlgebraElement& operator[](std::size_t i) const { return coords_[i]; }

  /// Real parts: the base projection.
  [[nodiscard]] std::vector<double> base() const;
  [[nodiscard]] std::vector<double> flat() const;

 private:
  AlgebraRef algebra_;
  std::vector<AlgebraElement> coords_;
};

double max_abs_diff(const WeilPoint& a, const WeilPoint& b);

/// T^A f on A^n: f evaluated with algebra-valued arguments.
class LiftedMap {
 public:
  LiftedMap(AlgebraRef algebra, Program f) : algebra_(std::move(algebra)), f_(std::move(f)) {}
  [[nodiscard]] const AlgebraRef& algebra() const noexcept { return algebra_; }
  [[nodiscard]] const Program& program() const noexcept { return f_; }
  WeilPoint operator()(const WeilPoint& p) const;

 private:
  AlgebraRef algebra_;
  Program f_;
};

LiftedMap lift(AlgebraRef algebra, Program f);

/// mu_V = id_V (x) mu applied coordinatewise.
WeilPoint transform(const AlgebraHom& mu, const WeilPoint& p);

/// T^A f written out as a map R^{n dim A} -> R^{p dim A} in the
/// coordinate-major coefficient layout, by expanding f over A with symbolic
/// coefficients.
Program render_lift(const AlgebraRef& algebra, const Program& f);

/// A point of T^B T^A R^n, stored as a B-point of R^{n dim A}
/// (coordinate-major over A's coefficients).
struct IteratedPoint {
  AlgebraRef outer;  // B
  AlgebraRef inner;  // A
  WeilPoint point;   // over B, dim n * dim A
};

/// T^B T^A R^n -> T^{B (x) A} R^n. Throws ShapeMismatch.
WeilPoint flatten(const IteratedPoint& p);
/// Inverse of flatten; `p` must be over tensor(outer, inner).
IteratedPoint unflatten(const AlgebraRef& outer, const AlgebraRef& inner, const WeilPoint& p);

/// {"algebra": name, "coords": [[coeff...]...]}.
nlohmann::json to_json(const WeilPoint& p);
WeilPoint weil_point_from_json(const AlgebraRef& algebra, const nlohmann::json& j);

}  // namespace weilcalc
