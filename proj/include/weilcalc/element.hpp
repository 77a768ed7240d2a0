#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "weilcalc/algebra.hpp"
#include "weilcalc/error.hpp"

namespace weilcalc {

/// Integer power by repeated multiplication, so polynomial evaluation is the
/// same sequence of ring operations on every carrier.
template <class T>
T ipow(const T& x, int k) {
  if (k < 0) return T(1.0) / ipow(x, -k);
  T out(1.0);
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

/// Coefficient vector over a WeilAlgebra. `T` is the coefficient field
/// carrier: double for numbers, Expr for symbolic coefficients.
template <class T>
class Element {
 public:
  Element() = default;
  explicit Element(AlgebraRef algebra) : algebra_(std::move(algebra)), coeffs_(algebra_->dim(), T(0.0)) {}
  Element(AlgebraRef algebra, std::vector<T> coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != algebra_->dim())
      throw Error(ErrorKind::ShapeMismatch, "element of " + algebra_->name() + " needs " +
                                                std::to_string(algebra_->dim()) + " coefficients");
  }

  static Element constant(AlgebraRef algebra, T value) {
    Element out(std::move(algebra));
    out.coeffs_[out.algebra_->unit_index()] = std::move(value);
    return out;
  }
  static Element basis(AlgebraRef algebra, std::size_t i) {
    Element out(std::move(algebra));
    out.coeffs_.at(i) = T(1.0);
    return out;
  }

  [[nodiscard]] const AlgebraRef& algebra() const noexcept { return algebra_; }
  [[nodiscard]] const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::vector<T>& coeffs() noexcept { return coeffs_; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  T& operator[](std::size_t i) { return coeffs_[i]; }

  [[nodiscard]] const T& real_part() const { return coeffs_[algebra_->unit_index()]; }
  /// The element minus its real part.
  [[nodiscard]] Element nilpotent_part() const {
    Element out = *this;
    out.coeffs_[algebra_->unit_index()] = T(0.0);
    return out;
  }

  Element& operator+=(const Element& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    Element out(a.algebra_);
    for (const StructureEntry& e : a.algebra_->entries()) {
      T term = a.coeffs_[e.i] * b.coeffs_[e.j];
      if (e.c != 1.0) term = term * T(e.c);
      out.coeffs_[e.k] = out.coeffs_[e.k] + term;
    }
    return out;
  }

  friend Element operator*(Element a, const T& s) {
    for (auto& c : a.coeffs_) c = c * s;
    return a;
  }
  friend Element operator*(const T& s, Element a) { return std::move(a) * s; }

  friend Element operator+(Element a, const T& s) {
    auto& c = a.coeffs_[a.algebra_->unit_index()];
    c = c + s;
    return a;
  }
  friend Element operator+(const T& s, Element a) { return std::move(a) + s; }
  friend Element operator-(Element a, const T& s) {
    auto& c = a.coeffs_[a.algebra_->unit_index()];
    c = c - s;
    return a;
  }

  void check_same(const Element& o) const {
    if (!same_algebra(algebra_, o.algebra_))
      throw Error(ErrorKind::AlgebraMismatch, algebra_->name() + " vs " + o.algebra_->name());
  }

 private:
  AlgebraRef algebra_;
  std::vector<T> coeffs_;
};

using AlgebraElement = Element<double>;

/// Scalar primitives with a derivative table.
enum class Primitive { Sin, Cos, Exp, Log, Sqrt, Inv };

namespace detail {

template <class T>
inline constexpr bool is_double_v = std::is_same_v<T, double>;

/// f^{(j)}(a0) for j = 0..order.
template <class T>
std::vector<T> derivative_table(Primitive prim, const T& a0, std::size_t order) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  std::vector<T> d;
  d.reserve(order + 1);
  switch (prim) {
    case Primitive::Sin:
    case Primitive::Cos: {
      const T s = sin(a0);
      const T c = cos(a0);
      // sin, cos, -sin, -cos, ...; cos is sin shifted by one.
      const std::size_t shift = prim == Primitive::Cos ? 1 : 0;
      for (std::size_t j = 0; j <= order; ++j) {
        switch ((j + shift) % 4) {
          case 0: d.push_back(s); break;
          case 1: d.push_back(c); break;
          case 2: d.push_back(-s); break;
          default: d.push_back(-c); break;
        }
      }
      break;
    }
    case Primitive::Exp: {
      const T e = exp(a0);
      for (std::size_t j = 0; j <= order; ++j) d.push_back(e);
      break;
    }
    case Primitive::Log: {
      d.push_back(log(a0));
      // (-1)^(j-1) (j-1)! / a0^j
      double fact = 1.0;
      for (std::size_t j = 1; j <= order; ++j) {
        const double coef = (j % 2 == 1 ? 1.0 : -1.0) * fact;
        d.push_back(T(coef) / ipow(a0, static_cast<int>(j)));
        fact *= static_cast<double>(j);
      }
      break;
    }
    case Primitive::Sqrt: {
      const T s = sqrt(a0);
      d.push_back(s);
      double coef = 1.0;
      for (std::size_t j = 1; j <= order; ++j) {
        coef *= 0.5 - static_cast<double>(j - 1);
        d.push_back(T(coef) * s / ipow(a0, static_cast<int>(j)));
      }
      break;
    }
    case Primitive::Inv: {
      // (-1)^j j! / a0^(j+1)
      double fact = 1.0;
      for (std::size_t j = 0; j <= order; ++j) {
        if (j > 0) fact *= static_cast<double>(j);
        const double coef = (j % 2 == 0 ? 1.0 : -1.0) * fact;
        d.push_back(T(coef) / ipow(a0, static_cast<int>(j) + 1));
      }
      break;
    }
  }
  return d;
}

template <class T>
void check_domain(Primitive prim, const Element<T>& a) {
  if constexpr (is_double_v<T>) {
    const double a0 = a.real_part();
    bool has_nilpotent = false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != a.algebra()->unit_index() && a[i] != 0.0) has_nilpotent = true;
    switch (prim) {
      case Primitive::Log:
        if (!(a0 > 0.0)) throw Error(ErrorKind::DomainError, "log needs positive real part");
        break;
      case Primitive::Sqrt:
        if (a0 < 0.0 || (a0 == 0.0 && has_nilpotent && a.algebra()->height() > 0))
          throw Error(ErrorKind::DomainError, "sqrt needs positive real part");
        break;
      case Primitive::Inv:
        if (a0 == 0.0) throw Error(ErrorKind::DivisionByNilpotent, "divisor has zero real part");
        break;
      default: break;
    }
  }
}

}  // namespace detail

/// prim(a0 + n) = sum_{j=0}^{height} prim^{(j)}(a0) n^j / j!, the unique
/// extension of a scalar primitive compatible with the Weil functor.
template <class T>
Element<T> evaluate_analytic(Primitive prim, const Element<T>& a) {
  detail::check_domain(prim, a);
  const auto& alg = a.algebra();
  const std::size_t h = alg->height();
  const auto table = detail::derivative_table<T>(prim, a.real_part(), h);
  const Element<T> n = a.nilpotent_part();
  Element<T> out = Element<T>::constant(alg, table[0]);
  Element<T> power = Element<T>::constant(alg, T(1.0));
  double fact = 1.0;
  for (std::size_t j = 1; j <= h; ++j) {
    power = power * n;
    fact *= static_cast<double>(j);
    out += power * (table[j] / T(fact));
  }
  return out;
}

template <class T>
Element<T> sin(const Element<T>& a) { return evaluate_analytic(Primitive::Sin, a); }
template <class T>
Element<T> cos(const Element<T>& a) { return evaluate_analytic(Primitive::Cos, a); }
template <class T>
Element<T> exp(const Element<T>& a) { return evaluate_analytic(Primitive::Exp, a); }
template <class T>
Element<T> log(const Element<T>& a) { return evaluate_analytic(Primitive::Log, a); }
template <class T>
Element<T> sqrt(const Element<T>& a) { return evaluate_analytic(Primitive::Sqrt, a); }
template <class T>
Element<T> inverse(const Element<T>& a) { return evaluate_analytic(Primitive::Inv, a); }

template <class T>
Element<T> operator/(const Element<T>& a, const Element<T>& b) {
  return a * inverse(b);
}

template <class T>
Element<T> ipow(const Element<T>& x, int k) {
  if (k < 0) return inverse(ipow(x, -k));
  Element<T> out = Element<T>::constant(x.algebra(), T(1.0));
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

/// Largest coefficient difference between two numeric elements of the same algebra.
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

std::string to_string(const AlgebraElement& a);

}  // namespace weilcalc
