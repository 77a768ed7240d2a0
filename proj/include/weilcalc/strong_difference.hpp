#pragma once

#include <string>
#include <vector>

#include "weilcalc/hom.hpp"
#include "weilcalc/program.hpp"
#include "weilcalc/weil_functor.hpp"

namespace weilcalc {

/// The five-dimensional algebra behind the strong difference, spanned by
/// {1, e1+E2, e2+E1, e1e2, E1E2} inside D(x)D + D(x)D, with its inclusion
/// and sigma: S -> D, sigma(a0, a1, a2, a3, a4) = a0 + (a3 - a4) e.
struct SBundle {
  AlgebraRef algebra;
  AlgebraHom inclusion;
  AlgebraHom sigma;
  AlgebraRef ambient;  // sum(D(x)D, D(x)D)
};

/// Built once through subalgebra(); later calls return the same bundle.
const SBundle& make_S();

/// tensor(dual, dual), cached. Basis {1, e1, e2, e1*e2}; e1 is the outer
/// (differentiating) direction.
const AlgebraRef& dual2();

/// A second-order tangent on R^n: a point over D(x)D with coordinates
/// a0 + u e1 + v e2 + w e1e2.
using SecondTangent = WeilPoint;

SecondTangent second_tangent(std::span<const double> base, std::span<const double> u, std::span<const double> v,
                             std::span<const double> w);

/// Same base, e1 and e2 parts swapped, within `tol`.
bool compatible(const SecondTangent& x, const SecondTangent& y, double tol = kDefaultTolerance);

struct TangentVector {
  std::vector<double> base;
  std::vector<double> vector;
};

/// X - Y computed through S and sigma. Throws IncompatiblePair.
TangentVector strong_diff(const SecondTangent& x, const SecondTangent& y, double tol = kDefaultTolerance);

/// The pair (X, Y) as a point of S^n: a1 = u(X), a2 = v(X), a3 = w(X), a4 = w(Y).
template <class T>
Element<T> embed_pair(const T& a0, const T& u, const T& v, const T& wx, const T& wy) {
  return Element<T>(make_S().algebra, {a0, u, v, wx, wy});
}

/// TY o X at x: base x, e1 part X(x), e2 part Y(x), e1e2 part DY(x) X(x).
SecondTangent tangent_compose(const VectorField& y, const VectorField& x, std::span<const double> at);

/// [X, Y] = (TY o X) - (TX o Y), the strong difference taken through sigma
/// with symbolic coefficients. With this operand order the result is the
/// classical DY.X - DX.Y.
VectorField bracket(const VectorField& x, const VectorField& y);

/// Bracket value at a point, computed numerically through strong_diff.
std::vector<double> bracket_at(const VectorField& x, const VectorField& y, std::span<const double> at);

/// A pair with A-valued components: points over A (x) D (x) D, i.e. per
/// coordinate an element with A-coefficients on {1, e1, e2, e1e2}.
struct SPair {
  WeilPoint x;
  WeilPoint y;
};

/// Both members over tensor(A, D(x)D) with A-valued compatibility.
bool compatible_over(const AlgebraRef& a, const SPair& pair, double tol = kDefaultTolerance);

/// K^A: the permutation A (x) D (x) D -> D (x) D (x) A, read back as second
/// tangents on R^{n dim A} (coordinate-major). Throws IncompatiblePair.
SPair K_map(const AlgebraRef& a, const SPair& pair);

/// Random A-valued compatible pair on R^n.
SPair random_compatible_pair(const AlgebraRef& a, std::size_t n, std::mt19937_64& rng);

/// Path 1 of the square: sigma on T^A R^n after K^A. Path 2: T^A sigma
/// (sigma with A-valued coefficients) followed by kappa^A. Both as points
/// over tensor(D, A). Returns the max deviation.
struct ExchangeSquare {
  WeilPoint via_K;
  WeilPoint via_T_sigma;
  double deviation = 0.0;
};
ExchangeSquare exchange_square(const AlgebraRef& a, const SPair& pair);

/// The square A(x)B(x)C -> B(x)C(x)A -> C(x)A against A(x)B(x)C -> A(x)C -> C(x)A,
/// plus the three identities for B = C = D used with it. Deviations are
/// exact matrix differences.
struct LemmaCheck {
  double square = 0.0;
  double square_dd = 0.0;       // the square with B = C = D
  double naturality = 0.0;      // kappa o (id(x)id(x)rho) = (id(x)id(x)rho) o (kappa(x)id)
  double standard = 0.0;        // (rho(x)id) o kappa = id(x)rho
  double tangent_square = 0.0;  // (id(x)rho(x)id) o (id(x)kappa) = id(x)id(x)rho
  [[nodiscard]] double worst() const;
};
LemmaCheck check_lemma(const AlgebraRef& a, const AlgebraRef& b, const AlgebraRef& c);

}  // namespace weilcalc
