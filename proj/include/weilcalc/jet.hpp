#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "weilcalc/hom.hpp"
#include "weilcalc/program.hpp"
#include "weilcalc/report.hpp"
#include "weilcalc/weil_functor.hpp"

namespace weilcalc {

/// Invertible r-jet at 0 of a map R^m -> R^m fixing 0: a polynomial map
/// with no constant term, truncated at degree r. Coefficients are
/// component-major over the monomials of degree 1..r of truncated(m, r):
/// component i, monomial k (k >= 1 in the algebra basis) at i * (dim - 1) + k - 1.
class JetGroupElement {
 public:
  /// Throws ShapeMismatch, or SingularLinearPart when |det L| < 1e-12.
  JetGroupElement(std::size_t m, std::size_t r, std::vector<double> coeffs);

  static JetGroupElement identity(std::size_t m, std::size_t r);
  /// Random element near the identity: linear part I + small noise, higher
  /// coefficients in [-scale, scale].
  static JetGroupElement random(std::size_t m, std::size_t r, std::mt19937_64& rng, double scale = 0.5);

  [[nodiscard]] std::size_t m() const noexcept { return m_; }
  [[nodiscard]] std::size_t r() const noexcept { return r_; }
  [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t monomials() const noexcept { return coeffs_.size() / m_; }
  [[nodiscard]] double coeff(std::size_t component, std::size_t monomial) const {
    return coeffs_[component * monomials() + monomial - 1];
  }
  [[nodiscard]] Matrix linear_part() const;

  /// The components as elements of truncated(m, r) (zero real part).
  [[nodiscard]] std::vector<AlgebraElement> components() const;
  /// g(y_1..y_m) for arguments in any algebra over which the jet is evaluated.
  template <class T>
  std::vector<Element<T>> apply(const AlgebraRef& algebra, const std::vector<Element<T>>& y) const;

 private:
  std::size_t m_ = 0;
  std::size_t r_ = 0;
  std::vector<double> coeffs_;
};

double max_abs_diff(const JetGroupElement& a, const JetGroupElement& b);

/// a o b truncated at degree r.
JetGroupElement jet_compose(const JetGroupElement& a, const JetGroupElement& b);
JetGroupElement jet_invert(const JetGroupElement& a);

/// Coefficients of the degree >= 1 part of an element of truncated(m, r),
/// laid out per component as in JetGroupElement.
std::vector<double> jet_coefficients(const std::vector<AlgebraElement>& components);

/// H(g) on truncated(m, r): phi -> phi o g^{-1}. With this orientation
/// H(g1 g2) = H(g1) H(g2).
AlgebraHom canonical_action(std::size_t m, std::size_t r, const JetGroupElement& g);

using GroupAction = std::function<AlgebraHom(const JetGroupElement&)>;

/// The datum (A, H, t) of a fiber product preserving bundle functor on
/// fibered manifolds over m-dimensional bases.
class FunctorTriple {
 public:
  enum class ActionKind { canonical, trivial, custom };

  [[nodiscard]] const AlgebraRef& algebra() const noexcept { return algebra_; }
  [[nodiscard]] std::size_t m() const noexcept { return m_; }
  [[nodiscard]] std::size_t r() const noexcept { return r_; }
  [[nodiscard]] const AlgebraHom& t() const noexcept { return t_; }
  [[nodiscard]] ActionKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string describe() const;
  AlgebraHom H(const JetGroupElement& g) const { return h_(g); }

  /// Matrices of dH at the identity along each coordinate of the Lie
  /// algebra (same layout as JetGroupElement coefficients).
  [[nodiscard]] const std::vector<Matrix>& generators() const noexcept { return generators_; }
  /// t(y_i) in A for the generators y_i of truncated(m, r).
  [[nodiscard]] const std::vector<AlgebraElement>& t_generators() const noexcept { return t_gens_; }

  /// Validates the invariants on `samples` random group elements and pairs;
  /// throws InvariantViolation naming the worst sample.
  static FunctorTriple make(AlgebraRef algebra, std::size_t m, std::size_t r, GroupAction h, AlgebraHom t,
                            ActionKind kind, std::size_t samples = 200, std::uint64_t seed = 1);

 private:
  FunctorTriple(AlgebraRef a, std::size_t m, std::size_t r, GroupAction h, AlgebraHom t, ActionKind kind);

  AlgebraRef algebra_;
  std::size_t m_ = 0;
  std::size_t r_ = 0;
  GroupAction h_;
  AlgebraHom t_;
  ActionKind kind_ = ActionKind::custom;
  std::vector<Matrix> generators_;
  std::vector<AlgebraElement> t_gens_;
};

/// J^r = (truncated(m, r), canonical action, identity).
FunctorTriple jr_triple(std::size_t m, std::size_t r);
/// (A, trivial action, t).
FunctorTriple trivial_triple(AlgebraRef algebra, std::size_t m, std::size_t r, AlgebraHom t);
/// (A, trivial action, truncated(m, r) -> R -> A); T^A on the fiber.
FunctorTriple trivial_triple(AlgebraRef algebra, std::size_t m, std::size_t r);

/// {"algebra": expr-or-object, "m": int, "r": int, "H": "canonical"|"trivial",
///  "t": "identity"|"real"|[[...]...]}.
FunctorTriple triple_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FunctorTriple& t);

/// Normalized point of G(R^m x R^q): the frame is the translation jet at x,
/// the fiber part q in A^q. Its T^A-base is x + t(y).
struct GPoint {
  std::vector<double> x;
  WeilPoint q;
};

/// A fibered map R^m x R^q -> R^m x R^q' over a base map: the first m
/// outputs depend on x only.
struct FiberedMap {
  std::size_t m = 0;
  Program map;  // arity m + q -> m + q'
};

/// Throws NonProjectable if a base output references a fiber variable.
void check_projectable(std::size_t m, const Program& f);

/// Gf on normalized points.
GPoint g_apply(const FunctorTriple& triple, const FiberedMap& f, const GPoint& p);

/// The tangent of the flow prolongation of xi to the frame bundle at frame
/// (x, g): the r-jet of xi(x + g(y)) at 0, as (xdot, gdot).
struct FrameTangent {
  std::vector<double> x;
  std::vector<double> g;
};
FrameTangent frame_prolong(const Program& xi, std::size_t r, std::span<const double> x, const JetGroupElement& g);
/// The same as a vector field on R^m x (jet coefficients).
VectorField frame_prolong_field(const Program& xi, std::size_t r);

/// G X for a projectable field X on R^m x R^q, as a vector field on the
/// normalized coordinates (x, q flattened coordinate-major): base xi and
/// fiber X^A(x + t(y), q) + dH(jet of xi(x + y)) q. Throws NonProjectable.
VectorField g_field_prolong(const FunctorTriple& triple, const VectorField& x_field);

/// [G X1, G X2] against G [X1, X2] at random normalized points.
Report check_g_bracket(const FunctorTriple& triple, const VectorField& x1, const VectorField& x2, std::size_t samples,
                 std::uint64_t seed, double tol);

template <class T>
std::vector<Element<T>> JetGroupElement::apply(const AlgebraRef& algebra, const std::vector<Element<T>>& y) const {
  const auto mons = monomial_exponents(m_, r_);
  std::vector<Element<T>> powers;  // y^alpha for every monomial of degree >= 1
  for (std::size_t k = 1; k < mons.size(); ++k) {
    auto p = Element<T>::constant(algebra, T(1.0));
    for (std::size_t v = 0; v < m_; ++v)
      for (int e = 0; e < mons[k][v]; ++e) p = p * y[v];
    powers.push_back(std::move(p));
  }
  std::vector<Element<T>> out;
  for (std::size_t i = 0; i < m_; ++i) {
    Element<T> acc(algebra);
    for (std::size_t k = 1; k < mons.size(); ++k) {
      const double c = coeff(i, k);
      if (c != 0.0) acc += powers[k - 1] * T(c);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace weilcalc
