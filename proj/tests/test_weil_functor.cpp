#include <cmath>
#include <random>

#include "doctest.h"
#include "weilcalc/algebra_io.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/weil_functor.hpp"

using namespace weilcalc;

namespace {
const Expr x = Expr::var(0);
const Expr y = Expr::var(1);
}  // namespace

TEST_CASE("T^D f is f with its derivative") {
  const auto d = dual();
  const Program f(1, {sin(x) * x});
  const WeilPoint p(d, {AlgebraElement(d, {0.3, 2.0})});
  const auto q = lift(d, f)(p);
  CHECK(q[0][0] == doctest::Approx(std::sin(0.3) * 0.3));
  CHECK(q[0][1] == doctest::Approx(2.0 * (std::cos(0.3) * 0.3 + std::sin(0.3))));
}

TEST_CASE("functoriality: T^A(g o f) = T^A g o T^A f") {
  std::mt19937_64 rng(11);
  for (const auto& a : {dual(), truncated(2, 2), sum(dual(), dual())}) {
    const auto f = random_polynomial(2, 2, rng);
    const auto g = random_polynomial(2, 1, rng);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> flat(2 * a->dim());
    for (auto& c : flat) c = u(rng);
    const auto p = WeilPoint::from_flat(a, flat);
    const auto lhs = lift(a, compose(g, f))(p);
    const auto rhs = lift(a, g)(lift(a, f)(p));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("naturality in the algebra") {
  const auto t = truncated(1, 2);
  const auto mu = real_part(t);
  const Program f(2, {x * y + exp(x)});
  const WeilPoint p(t, {AlgebraElement(t, {0.1, 1.0, 0.5}), AlgebraElement(t, {-0.4, 0.2, 0.0})});
  const auto lhs = transform(mu, lift(t, f)(p));
  const auto rhs = lift(reals(), f)(transform(mu, p));
  CHECK(max_abs_diff(lhs, rhs) < 1e-14);
  CHECK(lhs.base()[0] == doctest::Approx(0.1 * -0.4 + std::exp(0.1)));
}

TEST_CASE("render_lift agrees with lifting") {
  const auto a = tensor(dual(), dual());
  const Program f(2, {x * x * y, cos(y)});
  const auto r = render_lift(a, f);
  CHECK(r.arity_in() == 8);
  CHECK(r.arity_out() == 8);
  std::vector<double> flat = {0.2, 1.0, -0.5, 0.3, 0.7, 0.1, 0.4, -0.2};
  const auto direct = lift(a, f)(WeilPoint::from_flat(a, flat)).flat();
  const auto rendered = r(flat);
  for (std::size_t i = 0; i < 8; ++i) CHECK(rendered[i] == doctest::Approx(direct[i]));
}

TEST_CASE("iterated functor flattens to the tensor product") {
  const auto b = dual();
  const auto a = truncated(1, 2);
  const Program f(1, {x * x * x});
  std::vector<double> coeffs(b->dim() * a->dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = 0.1 * static_cast<double>(i + 1);
  const IteratedPoint ip{b, a, WeilPoint::from_flat(b, coeffs)};
  const auto flat = flatten(ip);
  CHECK(flat.algebra()->dim() == 6);
  const auto back = unflatten(b, a, flat);
  CHECK(max_abs_diff(back.point, ip.point) == 0.0);

  const auto via_iter = flatten({b, a, lift(b, render_lift(a, f))(ip.point)});
  const auto via_tensor = lift(flat.algebra(), f)(flat);
  CHECK(max_abs_diff(via_iter, via_tensor) < 1e-12);
}

TEST_CASE("mismatched points are rejected") {
  const auto d = dual();
  const WeilPoint p(d, {AlgebraElement::basis(d, 0)});
  CHECK_THROWS_AS(lift(d, Program(2, {x + y}))(p), Error);
  CHECK_THROWS_AS(lift(truncated(1, 2), Program(1, {x}))(p), Error);
  const auto j = to_json(p);
  CHECK(max_abs_diff(weil_point_from_json(d, j), p) == 0.0);
}
