#include "weilcalc/strong_difference.hpp"

#include <algorithm>
#include <cmath>

#include "weilcalc/error.hpp"

namespace weilcalc {

namespace {

// Coefficient positions in D(x)D.
constexpr std::size_t kBase = 0;
constexpr std::size_t kU = 1;  // e1
constexpr std::size_t kV = 2;  // e2
constexpr std::size_t kW = 3;  // e1e2

SBundle build_S() {
  const auto& dd = dual2();
  const auto ambient = sum(dd, dd);
  // ambient basis: 1, e1, e2, e1e2, E1, E2, E1E2
  auto vec = [&](std::initializer_list<std::size_t> idx) {
    AlgebraElement e(ambient);
    for (auto i : idx) e[i] = 1.0;
    return e;
  };
  const std::vector<AlgebraElement> span = {vec({0}), vec({1, 5}), vec({2, 4}), vec({3}), vec({6})};
  auto sub = subalgebra(ambient, span, {"1", "e1+E2", "e2+E1", "e1e2", "E1E2"}, "S");
  Matrix s(2, 5);
  s(0, 0) = 1.0;
  s(1, 3) = 1.0;
  s(1, 4) = -1.0;
  auto sigma = AlgebraHom::create(sub.algebra, dual(), std::move(s));
  return {sub.algebra, std::move(sub.inclusion), std::move(sigma), ambient};
}

double coeff(const WeilPoint& p, std::size_t i, std::size_t k) { return p[i][k]; }

void check_second_tangent(const SecondTangent& x) {
  if (!same_algebra(x.algebra(), dual2()))
    throw Error(ErrorKind::AlgebraMismatch, "second tangent must be over D(x)D, got " + x.algebra()->name());
}

}  // namespace

const AlgebraRef& dual2() {
  static const AlgebraRef dd = tensor(dual(), dual());
  return dd;
}

const SBundle& make_S() {
  static const SBundle bundle = build_S();
  return bundle;
}

SecondTangent second_tangent(std::span<const double> base, std::span<const double> u, std::span<const double> v,
                             std::span<const double> w) {
  const std::size_t n = base.size();
  if (u.size() != n || v.size() != n || w.size() != n)
    throw Error(ErrorKind::ShapeMismatch, "second tangent parts of unequal length");
  std::vector<AlgebraElement> c;
  for (std::size_t i = 0; i < n; ++i) c.emplace_back(dual2(), std::vector<double>{base[i], u[i], v[i], w[i]});
  return WeilPoint(dual2(), std::move(c));
}

bool compatible(const SecondTangent& x, const SecondTangent& y, double tol) {
  check_second_tangent(x);
  check_second_tangent(y);
  if (x.dim() != y.dim()) return false;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (std::abs(coeff(x, i, kBase) - coeff(y, i, kBase)) > tol) return false;
    if (std::abs(coeff(x, i, kU) - coeff(y, i, kV)) > tol) return false;
    if (std::abs(coeff(x, i, kV) - coeff(y, i, kU)) > tol) return false;
  }
  return true;
}

TangentVector strong_diff(const SecondTangent& x, const SecondTangent& y, double tol) {
  if (!compatible(x, y, tol)) throw Error(ErrorKind::IncompatiblePair, "base or first-order parts do not match");
  const auto& sigma = make_S().sigma;
  TangentVector out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const auto s = embed_pair(coeff(x, i, kBase), coeff(x, i, kU), coeff(x, i, kV), coeff(x, i, kW), coeff(y, i, kW));
    const auto d = sigma(s);
    out.base.push_back(d[0]);
    out.vector.push_back(d[1]);
  }
  return out;
}

SecondTangent tangent_compose(const VectorField& y, const VectorField& x, std::span<const double> at) {
  const auto xv = x(at);
  std::vector<AlgebraElement> moving;
  for (std::size_t i = 0; i < at.size(); ++i) moving.emplace_back(dual(), std::vector<double>{at[i], xv[i]});
  const auto lifted = y.components()(dual(), moving);
  std::vector<double> yv;
  std::vector<double> w;
  for (const auto& e : lifted) {
    yv.push_back(e[0]);
    w.push_back(e[1]);
  }
  return second_tangent(at, xv, yv, w);
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim())
    throw Error(ErrorKind::ArityMismatch, "bracket of fields on R^" + std::to_string(x.dim()) + " and R^" +
                                              std::to_string(y.dim()));
  const std::size_t n = x.dim();
  std::vector<Expr> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(Expr::var(i));
  const auto xe = x.components().substitute(vars);
  const auto ye = y.components().substitute(vars);

  // e-part of a field evaluated at x + V e: the directional derivative along V.
  auto directional = [&](const Program& f, const std::vector<Expr>& along) {
    std::vector<Element<Expr>> moving;
    for (std::size_t i = 0; i < n; ++i) moving.emplace_back(dual(), std::vector<Expr>{vars[i], along[i]});
    std::vector<Expr> out;
    for (const auto& e : f.over<Expr>(dual(), moving)) out.push_back(e[1]);
    return out;
  };
  const auto w_yx = directional(y.components(), xe);  // w(TY o X)
  const auto w_xy = directional(x.components(), ye);  // w(TX o Y)

  const auto& sigma = make_S().sigma;
  std::vector<Expr> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = sigma.apply(embed_pair<Expr>(vars[i], xe[i], ye[i], w_yx[i], w_xy[i]));
    out.push_back(d[1]);
  }
  return VectorField(Program(n, std::move(out)));
}

std::vector<double> bracket_at(const VectorField& x, const VectorField& y, std::span<const double> at) {
  return strong_diff(tangent_compose(y, x, at), tangent_compose(x, y, at)).vector;
}

bool compatible_over(const AlgebraRef& a, const SPair& pair, double tol) {
  const auto ad = tensor(a, dual2());
  if (!same_algebra(pair.x.algebra(), ad) || !same_algebra(pair.y.algebra(), ad)) return false;
  if (pair.x.dim() != pair.y.dim()) return false;
  const std::size_t da = a->dim();
  for (std::size_t i = 0; i < pair.x.dim(); ++i)
    for (std::size_t k = 0; k < da; ++k) {
      auto at = [&](const WeilPoint& p, std::size_t t) { return p[i][k + da * t]; };
      if (std::abs(at(pair.x, kBase) - at(pair.y, kBase)) > tol) return false;
      if (std::abs(at(pair.x, kU) - at(pair.y, kV)) > tol) return false;
      if (std::abs(at(pair.x, kV) - at(pair.y, kU)) > tol) return false;
    }
  return true;
}

SPair K_map(const AlgebraRef& a, const SPair& pair) {
  if (!compatible_over(a, pair)) throw Error(ErrorKind::IncompatiblePair, "pair is not compatible over " + a->name());
  const auto d = dual();
  // kappa^A_{TM}: A(x)D(x)D -> D(x)A(x)D, then T kappa^A_M: D(x)A(x)D -> D(x)D(x)A.
  const auto k = compose(hom_tensor(weilcalc::exchange(a, d), d, Side::left), hom_tensor(weilcalc::exchange(a, d), d, Side::right));
  const std::size_t da = a->dim();
  auto move = [&](const WeilPoint& p) {
    std::vector<AlgebraElement> c;
    for (const auto& x : p.coords()) {
      const auto moved = k(x);  // index t + 4 a
      for (std::size_t j = 0; j < da; ++j)
        c.emplace_back(dual2(), std::vector<double>{moved[4 * j], moved[1 + 4 * j], moved[2 + 4 * j], moved[3 + 4 * j]});
    }
    return WeilPoint(dual2(), std::move(c));
  };
  return {move(pair.x), move(pair.y)};
}

SPair random_compatible_pair(const AlgebraRef& a, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto ad = tensor(a, dual2());
  const std::size_t da = a->dim();
  std::vector<AlgebraElement> xs;
  std::vector<AlgebraElement> ys;
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement x(ad);
    AlgebraElement y(ad);
    for (std::size_t k = 0; k < da; ++k) {
      const double base = u(rng), p = u(rng), q = u(rng);
      x[k + da * kBase] = base;
      y[k + da * kBase] = base;
      x[k + da * kU] = p;
      y[k + da * kV] = p;
      x[k + da * kV] = q;
      y[k + da * kU] = q;
      x[k + da * kW] = u(rng);
      y[k + da * kW] = u(rng);
    }
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  return {WeilPoint(ad, std::move(xs)), WeilPoint(ad, std::move(ys))};
}

ExchangeSquare exchange_square(const AlgebraRef& a, const SPair& pair) {
  const std::size_t da = a->dim();
  const auto da_alg = tensor(dual(), a);
  const std::size_t n = pair.x.dim();

  // sigma_{T^A M} o K^A
  const SPair moved = K_map(a, pair);
  const TangentVector tv = strong_diff(moved.x, moved.y);
  std::vector<AlgebraElement> first;
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement e(da_alg);
    for (std::size_t k = 0; k < da; ++k) {
      e[2 * k] = tv.base[i * da + k];
      e[1 + 2 * k] = tv.vector[i * da + k];
    }
    first.push_back(std::move(e));
  }

  // kappa^A o T^A sigma
  const auto& sb = make_S();
  const auto as = tensor(a, sb.algebra);
  const auto t_sigma = hom_tensor(sb.sigma, a, Side::left);
  const auto kappa = weilcalc::exchange(a, dual());
  std::vector<AlgebraElement> second;
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement e(as);
    for (std::size_t k = 0; k < da; ++k) {
      auto at = [&](const WeilPoint& p, std::size_t t) { return p[i][k + da * t]; };
      e[k + da * 0] = at(pair.x, kBase);
      e[k + da * 1] = at(pair.x, kU);
      e[k + da * 2] = at(pair.x, kV);
      e[k + da * 3] = at(pair.x, kW);
      e[k + da * 4] = at(pair.y, kW);
    }
    second.push_back(kappa(t_sigma(e)));
  }
  ExchangeSquare out{WeilPoint(da_alg, std::move(first)), WeilPoint(kappa.target(), std::move(second))};
  out.deviation = max_abs_diff(out.via_K, out.via_T_sigma);
  return out;
}

double LemmaCheck::worst() const {
  return std::max({square, square_dd, naturality, standard, tangent_square});
}

namespace {

double lemma_square(const AlgebraRef& a, const AlgebraRef& b, const AlgebraRef& c) {
  // A(x)B(x)C -> B(x)A(x)C -> B(x)C(x)A -> C(x)A
  const auto top = compose(hom_tensor(weilcalc::exchange(a, c), b, Side::left), hom_tensor(weilcalc::exchange(a, b), c, Side::right));
  const auto right = hom_tensor(real_part(b), tensor(c, a), Side::right);
  // A(x)B(x)C -> A(x)C -> C(x)A
  const auto left = hom_tensor(hom_tensor(real_part(b), a, Side::left), c, Side::right);
  const auto bottom = weilcalc::exchange(a, c);
  return max_abs_diff(compose(right, top).matrix(), compose(bottom, left).matrix());
}

}  // namespace

LemmaCheck check_lemma(const AlgebraRef& a, const AlgebraRef& b, const AlgebraRef& c) {
  const auto d = dual();
  const auto rho = real_part(d);
  LemmaCheck out;
  out.square = lemma_square(a, b, c);
  out.square_dd = lemma_square(a, d, d);
  // kappa^A_M o T^A T p_M = T T^A p_M o kappa^A_{TM} on A(x)D(x)D.
  {
    const auto lhs = compose(weilcalc::exchange(a, d), hom_tensor(rho, tensor(a, d), Side::left));
    const auto rhs = compose(hom_tensor(rho, tensor(d, a), Side::left), hom_tensor(weilcalc::exchange(a, d), d, Side::right));
    out.naturality = max_abs_diff(lhs.matrix(), rhs.matrix());
  }
  // p_{T^A M} o kappa^A_M = T^A p_M on A(x)D.
  {
    const auto lhs = compose(hom_tensor(rho, a, Side::right), weilcalc::exchange(a, d));
    const auto rhs = hom_tensor(rho, a, Side::left);
    out.standard = max_abs_diff(lhs.matrix(), rhs.matrix());
  }
  // T p_{T^A M} o T kappa^A_M = T T^A p_M on D(x)A(x)D.
  {
    const auto lhs = compose(hom_tensor(hom_tensor(rho, d, Side::left), a, Side::right),
                             hom_tensor(weilcalc::exchange(a, d), d, Side::left));
    const auto rhs = hom_tensor(rho, tensor(d, a), Side::left);
    out.tangent_square = max_abs_diff(lhs.matrix(), rhs.matrix());
  }
  return out;
}

}  // namespace weilcalc
