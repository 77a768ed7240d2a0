#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weilcalc/algebra.hpp"
#include "weilcalc/element.hpp"
#include "weilcalc/linalg.hpp"

namespace weilcalc {

/// Unital algebra homomorphism given by its matrix on the bases
/// (target.dim() rows, source.dim() columns). Only constructible through
/// validation, so every instance satisfies the unit and product laws.
class AlgebraHom {
 public:
  /// Throws ShapeMismatch, NotUnital or NotMultiplicative (the latter names
  /// the worst basis pair and its residual).
  static AlgebraHom create(AlgebraRef source, AlgebraRef target, Matrix matrix, double tol = kDefaultTolerance);
  static AlgebraHom identity(AlgebraRef algebra);

  [[nodiscard]] const AlgebraRef& source() const noexcept { return source_; }
  [[nodiscard]] const AlgebraRef& target() const noexcept { return target_; }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }

  template <class T>
  Element<T> apply(const Element<T>& a) const {
    if (!same_algebra(a.algebra(), source_))
      throw Error(ErrorKind::AlgebraMismatch, "hom from " + source_->name() + " applied to " + a.algebra()->name());
    Element<T> out(target_);
    for (std::size_t r = 0; r < matrix_.rows(); ++r)
      for (std::size_t c = 0; c < matrix_.cols(); ++c) {
        const double m = matrix_(r, c);
        if (m == 0.0) continue;
        out[r] = out[r] + (m == 1.0 ? a[c] : a[c] * T(m));
      }
    return out;
  }
  AlgebraElement operator()(const AlgebraElement& a) const { return apply(a); }

 private:
  AlgebraHom(AlgebraRef s, AlgebraRef t, Matrix m)
      : source_(std::move(s)), target_(std::move(t)), matrix_(std::move(m)) {}

  AlgebraRef source_;
  AlgebraRef target_;
  Matrix matrix_;
};

/// Worst violation of the homomorphism laws for a candidate matrix.
struct HomCheck {
  double unit_error = 0.0;
  double product_error = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};
HomCheck check_hom(const WeilAlgebra& source, const WeilAlgebra& target, const Matrix& m);

/// outer o inner.
AlgebraHom compose(const AlgebraHom& outer, const AlgebraHom& inner);

/// The real part projection A -> R.
AlgebraHom real_part(const AlgebraRef& a);
/// R -> A, x -> x * 1.
AlgebraHom unit_inclusion(const AlgebraRef& a);

/// kappa^{A,B}: A (x) B -> B (x) A, a (x) b -> b (x) a.
AlgebraHom exchange(const AlgebraRef& a, const AlgebraRef& b);

enum class Side { left, right };
/// left: id_C (x) mu : C (x) A -> C (x) B; right: mu (x) id_C : A (x) C -> B (x) C.
AlgebraHom hom_tensor(const AlgebraHom& mu, const AlgebraRef& c, Side side);

struct Subalgebra {
  AlgebraRef algebra;
  AlgebraHom inclusion;
};

/// The subalgebra spanned by `span` (which must contain the unit and be
/// closed under products), presented in that basis. Throws SpanNotClosed
/// naming the offending pair and its residual.
Subalgebra subalgebra(const AlgebraRef& ambient, const std::vector<AlgebraElement>& span,
                      std::vector<std::string> labels, std::string name, double tol = kDefaultTolerance);

}  // namespace weilcalc
