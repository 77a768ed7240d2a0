#include <random>

#include "doctest.h"
#include "weilcalc/prolongation.hpp"
#include "weilcalc/strong_difference.hpp"

using namespace weilcalc;

namespace {
const Expr x = Expr::var(0);
const Expr y = Expr::var(1);
}  // namespace

TEST_CASE("prolongation to TM of a linear field") {
  // X = x d/dx; on TR = D the prolongation is (x, v) -> (x, v).
  const auto d = dual();
  const auto p = field_prolong(d, VectorField(Program(1, {x})));
  CHECK(p.rendered().dim() == 2);
  const auto v = p.rendered().components()({2.0, 5.0});
  CHECK(v[0] == doctest::Approx(2.0));
  CHECK(v[1] == doctest::Approx(5.0));
}

TEST_CASE("prolongation of x^2 d/dx to the tangent bundle") {
  const auto d = dual();
  const auto p = field_prolong(d, VectorField(Program(1, {x * x})));
  const auto v = p.rendered().components()({3.0, 0.5});
  CHECK(v[0] == doctest::Approx(9.0));
  CHECK(v[1] == doctest::Approx(3.0));
  const WeilPoint a(d, {AlgebraElement(d, {3.0, 0.5})});
  const auto q = p(a);
  CHECK(q[0][1] == doctest::Approx(3.0));
}

TEST_CASE("prolongation commutes with the bracket") {
  std::mt19937_64 rng(21);
  const VectorField a(random_polynomial(2, 2, rng));
  const VectorField b(random_polynomial(2, 2, rng));
  for (const auto& alg : {dual(), truncated(2, 1), sum(dual(), dual()), tensor(dual(), dual())}) {
    const auto r = check_prolong_bracket(alg, a, b, 20, 7, 1e-7);
    CHECK(r.passed());
    CHECK(r.samples == 20);
    CHECK(r.max_error < 1e-9);
  }
}

TEST_CASE("prolongation of a transcendental field") {
  const VectorField a(Program(2, {sin(x) * y, exp(-x * y)}));
  const VectorField b(Program(2, {y, Expr(1.0)}));
  CHECK(check_prolong_bracket(truncated(1, 2), a, b, 30, 3, 1e-7).passed());
}
