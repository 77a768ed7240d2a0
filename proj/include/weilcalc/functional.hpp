#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"
#include "weilcalc/jet.hpp"
#include "weilcalc/program.hpp"
#include "weilcalc/report.hpp"
#include "weilcalc/weil_functor.hpp"

namespace weilcalc {

// Product-case functional bundles: E1 = R^m x R^q1, E2 = R^m x R^q2, and the
// fiber of F(E1, E2) at x is the space of maps R^q1 -> R^q2.
//
// Jet coordinates of order r are the partial derivatives d^alpha h, one
// block of q2 values per multi-index alpha with |alpha| <= r, the
// multi-indices in the graded order of truncated(q1, r). Coordinate s of
// block alpha sits at alpha * q2 + s. Because the order is graded, the
// order-r layout is a prefix of any higher-order layout.

/// Number of multi-indices of length q1 and degree <= r.
std::size_t jet_block_count(std::size_t q1, std::size_t r);

/// d^alpha h(y) for |alpha| <= r, laid out as above. Computed by lifting h
/// over truncated(q1, r) at y.
std::vector<double> jets_of(const Program& h, std::span<const double> y, std::size_t r);

struct FunctionalPoint {
  std::vector<double> x;
  Program h;  // q1 -> q2
};

/// A point of T^A F = T^A R^m x C(R^q1, A^q2).
struct FunctionalWeilPoint {
  WeilPoint a;
  Program h;  // q1 -> q2 * dim A, coordinate-major over A
};

/// Sizes shared by a family of functional fields.
struct FunctionalSignature {
  std::size_t m = 0;
  std::size_t q1 = 0;
  std::size_t q2 = 0;
  friend bool operator==(const FunctionalSignature&, const FunctionalSignature&) = default;
};

/// Finite-order field on F(E1, E2): at (x, h) the tangent is xi(x) on the
/// base and y -> D(x, y, j^r h(y)) on the fiber. D has inputs
/// x (m), y (q1), then the jet blocks; q2 outputs.
class FunctionalVectorField {
 public:
  FunctionalVectorField() = default;
  /// Throws ArityMismatch.
  FunctionalVectorField(FunctionalSignature sig, std::size_t r, Program xi, Program d);

  [[nodiscard]] const FunctionalSignature& signature() const noexcept { return sig_; }
  [[nodiscard]] std::size_t m() const noexcept { return sig_.m; }
  [[nodiscard]] std::size_t q1() const noexcept { return sig_.q1; }
  [[nodiscard]] std::size_t q2() const noexcept { return sig_.q2; }
  [[nodiscard]] std::size_t order() const noexcept { return r_; }
  [[nodiscard]] const Program& xi() const noexcept { return xi_; }
  [[nodiscard]] const Program& D() const noexcept { return d_; }

  /// The same field with D read on a higher-order layout (only the arity grows).
  [[nodiscard]] FunctionalVectorField with_order(std::size_t r) const;

  /// Base velocity at x.
  [[nodiscard]] std::vector<double> base(std::span<const double> x) const { return xi_(x); }
  /// Fiber velocity at y for the point (x, h).
  [[nodiscard]] std::vector<double> vertical(std::span<const double> x, const Program& h,
                                             std::span<const double> y) const;
  /// Fiber velocity from precomputed jets (at least order() blocks).
  [[nodiscard]] std::vector<double> vertical_from_jets(std::span<const double> x, std::span<const double> y,
                                                       std::span<const double> jets) const;

 private:
  FunctionalSignature sig_;
  std::size_t r_ = 0;
  Program xi_;
  Program d_;
};

/// The order-r morphism F(E1, E2) -> F(E3, E4) given by its associated maps:
/// base map f^a(x), a map q: v -> y from the E3 fiber to the E1 fiber, and
/// f^c(x, y, jets, v) with q4 outputs. D(h)(v) = f^c(x, q(v), j^r h(q(v)), v).
struct OrderRMorphism {
  std::size_t r = 0;
  FunctionalSignature sig;  // of F(E1, E2)
  Program base;             // m -> m
  Program q;                // q3 -> q1
  Program fc;               // m + q1 + blocks * q2 + q3 -> q4
  void validate() const;    // throws ArityMismatch
};

std::vector<double> morphism_apply(const OrderRMorphism& d, const FunctionalPoint& p, std::span<const double> v);

/// Fibered maps acting on F: f1 on E1 given through its fiberwise inverse
/// f1_inverse(x', y') -> y, f2 fiber part f2(x, z) -> z', both over `base`.
struct FunctionalMorphism {
  Program base;        // m -> m
  Program f1_inverse;  // m + q1' -> q1, evaluated at the image base point
  Program f2;          // m + q2 -> q2'
};

/// F(f1, f2)(x, h) = (base(x), f2(x, .) o h o f1(x, .)^{-1}), built by
/// substitution. Throws ArityMismatch.
FunctionalPoint fmorphism_apply(const FunctionalMorphism& f, const FunctionalPoint& p);

/// A basis of N_A modulo N_A^2 chosen among the basis vectors.
std::vector<AlgebraElement> default_generators(const AlgebraRef& algebra);

/// The A-velocity at u0 of the family u -> (base(u), family(u, .)), where u
/// runs over R^k and is moved along u0 + sum_i n_i with the nilpotent
/// `generators` n_i (one per parameter). family: k + q1 -> q2, base: k -> m.
FunctionalWeilPoint functional_lift(const AlgebraRef& algebra, const Program& family, const Program& base,
                                    std::span<const double> u0, const std::vector<AlgebraElement>& generators);

/// mu applied to the base point and blockwise to the fiber map.
FunctionalWeilPoint reparametrize(const AlgebraHom& mu, const FunctionalWeilPoint& p);

/// The bracket computed through the strong difference; order r1 + r2.
/// Base part [xi1, xi2]; fiber part the derivative of D2 along X1 (with the
/// total y-jets of D1) minus the swap, in the convention DY.X - DX.Y.
FunctionalVectorField functional_bracket(const FunctionalVectorField& x1, const FunctionalVectorField& x2);

/// The field prolongation to T^A F, a functional field with signature
/// (m dim A, q1, q2 dim A): base the rendered lift of xi, fiber D lifted over
/// A in the x and jet slots with y kept real.
FunctionalVectorField functional_field_prolong(const AlgebraRef& algebra, const FunctionalVectorField& x);

/// The field on G F = R^m x C(R^q1, A^q2) in normalized coordinates:
/// base xi, fiber D^A(x + t(Y), y, jets) + dH(jet of xi(x + Y)) h(y).
/// Signature (m, q1, q2 dim A). Throws NonProjectable if xi is not a field on R^m.
FunctionalVectorField g_functional(const FunctorTriple& triple, const FunctionalVectorField& x);

/// Random polynomial fiber map q1 -> q2 of the given degree.
Program random_fiber_map(std::size_t q1, std::size_t q2, std::size_t degree, std::mt19937_64& rng);

/// Random order-r field; D is polynomial in all inputs.
FunctionalVectorField random_functional_field(const FunctionalSignature& sig, std::size_t r, std::mt19937_64& rng);

/// max over base and fiber of |Z1 - Z2| at (x, h, y).
double field_deviation(const FunctionalVectorField& z1, const FunctionalVectorField& z2, std::span<const double> x,
                       const Program& h, std::span<const double> y);

/// T^A [X1, X2] against [T^A X1, T^A X2] at sampled (a, h, y) with polynomial h.
Report check_prolong_bracket_functional(const AlgebraRef& algebra, const FunctionalVectorField& x1,
                            const FunctionalVectorField& x2, std::size_t samples, std::uint64_t seed, double tol);

/// [G X1, G X2] against G [X1, X2].
Report check_g_bracket_functional(const FunctorTriple& triple, const FunctionalVectorField& x1,
                            const FunctionalVectorField& x2, std::size_t samples, std::uint64_t seed, double tol);

/// Perturbs h by c (y - y0)^alpha with |alpha| = r + 1 and compares
/// morphism outputs at v with q(v) = y0.
Report check_locality(const OrderRMorphism& d, std::size_t samples, std::uint64_t seed, double tol);

/// Display names for the inputs of D: x or x1.., y or y1.., then z<alpha>
/// per jet block (z0, z1, z2 when q1 = 1, else z10, z01, ...), with a _s
/// suffix when q2 > 1.
std::vector<std::string> jet_names(const FunctionalSignature& sig, std::size_t r);

/// {"m", "q1", "q2", "r", "xi": Program, "D": Program}.
FunctionalVectorField functional_field_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FunctionalVectorField& x);

}  // namespace weilcalc
