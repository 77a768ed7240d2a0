#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "weilcalc/expr.hpp"

namespace weilcalc {

namespace {

using Monomial = std::vector<std::pair<std::size_t, int>>;  // sorted (atom, exponent)
using Poly = std::map<Monomial, double>;

constexpr std::size_t kMaxTerms = 400;
// Atom ids: Var(i) is i; anything non-polynomial (sin(..), x/y, ...) is kept
// whole and numbered from kOpaque in order of appearance.
constexpr std::size_t kOpaque = std::size_t{1} << 40;

struct Atoms {
  std::vector<Expr> opaque;
  std::size_t id(const Expr& e) {
    for (std::size_t i = 0; i < opaque.size(); ++i)
      if (equal(opaque[i], e)) return kOpaque + i;
    opaque.push_back(e);
    return kOpaque + opaque.size() - 1;
  }
  [[nodiscard]] Expr expr(std::size_t id) const { return id >= kOpaque ? opaque[id - kOpaque] : Expr::var(id); }
};

Monomial times(const Monomial& a, const Monomial& b) {
  std::map<std::size_t, int> m(a.begin(), a.end());
  for (auto [v, e] : b) m[v] += e;
  return {m.begin(), m.end()};
}

std::optional<Poly> mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      out[times(ma, mb)] += ca * cb;
      if (out.size() > kMaxTerms) return std::nullopt;
    }
  return out;
}

std::optional<Poly> to_poly(const Expr& e, Atoms& atoms);

std::optional<Poly> opaque(const Expr& e, Atoms& atoms) {
  Expr inner = e.arity() == 1 ? Expr::make(e.op(), expand_polynomial(e.arg(0)))
                              : Expr::make(e.op(), expand_polynomial(e.arg(0)), expand_polynomial(e.arg(1)));
  if (e.op() == Op::IntPow) inner = ipow(expand_polynomial(e.arg(0)), e.power());
  return Poly{{Monomial{{atoms.id(inner), 1}}, 1.0}};
}

std::optional<Poly> to_poly(const Expr& e, Atoms& atoms) {
  switch (e.op()) {
    case Op::Const: return Poly{{Monomial{}, e.value()}};
    case Op::Var: return Poly{{Monomial{{e.index(), 1}}, 1.0}};
    case Op::Add:
    case Op::Sub: {
      auto a = to_poly(e.arg(0), atoms);
      auto b = to_poly(e.arg(1), atoms);
      if (!a || !b) return std::nullopt;
      const double sign = e.op() == Op::Add ? 1.0 : -1.0;
      for (const auto& [m, c] : *b) (*a)[m] += sign * c;
      if (a->size() > kMaxTerms) return std::nullopt;
      return a;
    }
    case Op::Neg: {
      auto a = to_poly(e.arg(0), atoms);
      if (!a) return std::nullopt;
      for (auto& [m, c] : *a) c = -c;
      return a;
    }
    case Op::Mul: {
      auto a = to_poly(e.arg(0), atoms);
      auto b = to_poly(e.arg(1), atoms);
      if (!a || !b) return std::nullopt;
      return mul(*a, *b);
    }
    case Op::Div: {
      if (!e.arg(1).is_const() || e.arg(1).value() == 0.0) return opaque(e, atoms);
      auto a = to_poly(e.arg(0), atoms);
      if (!a) return std::nullopt;
      for (auto& [m, c] : *a) c /= e.arg(1).value();
      return a;
    }
    case Op::IntPow: {
      if (e.power() < 0) return opaque(e, atoms);
      auto base = to_poly(e.arg(0), atoms);
      if (!base) return std::nullopt;
      std::optional<Poly> out = Poly{{Monomial{}, 1.0}};
      for (int i = 0; i < e.power() && out; ++i) out = mul(*out, *base);
      return out;
    }
    default: return opaque(e, atoms);
  }
}

int degree(const Monomial& m) {
  int d = 0;
  for (auto [v, e] : m) d += e;
  return d;
}

}  // namespace

Expr expand_polynomial(const Expr& e) {
  Atoms atoms;
  const auto poly = to_poly(e, atoms);
  if (!poly) return e;
  double scale = 0.0;
  for (const auto& [m, c] : *poly) scale = std::max(scale, std::abs(c));
  std::vector<std::pair<Monomial, double>> terms;
  for (const auto& [m, c] : *poly)
    if (std::abs(c) > 1e-13 * std::max(scale, 1.0)) terms.emplace_back(m, c);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  Expr out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Expr mono(1.0);
    for (auto [v, k] : m) mono = mono * ipow(atoms.expr(v), k);
    const double mag = std::abs(c);
    const Expr term = m.empty() ? Expr(mag) : mag == 1.0 ? mono : Expr(mag) * mono;
    out = first ? (c < 0 ? -term : term) : c < 0 ? out - term : out + term;
    first = false;
  }
  return out;
}

}  // namespace weilcalc
