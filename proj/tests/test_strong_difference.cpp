#include <random>

#include "doctest.h"
#include "weilcalc/error.hpp"
#include "weilcalc/strong_difference.hpp"

using namespace weilcalc;

namespace {
const Expr x = Expr::var(0);
const Expr y = Expr::var(1);
}  // namespace

TEST_CASE("S is five dimensional with sigma (1, 0, 0, e, -e)") {
  const auto& s = make_S();
  CHECK(s.algebra->dim() == 5);
  CHECK(s.algebra->height() == 2);
  const auto& m = s.sigma.matrix();
  const double want[2][5] = {{1, 0, 0, 0, 0}, {0, 0, 0, 1, -1}};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 5; ++c) CHECK(m(r, c) == want[r][c]);
  CHECK(&make_S() == &s);
}

TEST_CASE("strong difference of second tangents") {
  const double base[] = {1.0};
  const double u[] = {2.0};
  const double v[] = {3.0};
  const double wx[] = {5.0};
  const double wy[] = {1.5};
  const auto a = second_tangent(base, u, v, wx);
  const auto b = second_tangent(base, v, u, wy);
  CHECK(compatible(a, b));
  const auto d = strong_diff(a, b);
  CHECK(d.base[0] == 1.0);
  CHECK(d.vector[0] == doctest::Approx(3.5));
  CHECK_THROWS_AS(strong_diff(a, a), Error);
}

TEST_CASE("bracket of coordinate fields") {
  // [x^2 d/dx, d/dx] = -2x d/dx
  const VectorField a(Program(1, {x * x}));
  const VectorField b(Program(1, {Expr(1.0)}));
  const auto c = bracket(a, b);
  CHECK(c.components()({3.0})[0] == doctest::Approx(-6.0));
  CHECK(bracket(a, a).components()({1.7})[0] == doctest::Approx(0.0));
}

TEST_CASE("bracket agrees with the Jacobian formula and is antisymmetric") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    const VectorField a(random_polynomial(2, 2, rng));
    const VectorField b(random_polynomial(2, 2, rng));
    const double at[] = {0.3, -0.6};
    const auto sym = bracket(a, b)(at);
    const auto num = bracket_at(a, b, at);
    const auto fd = jacobian_bracket_oracle(a, b, at);
    const auto swapped = bracket(b, a)(at);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(sym[i] == doctest::Approx(num[i]).epsilon(1e-12));
      CHECK(sym[i] == doctest::Approx(fd[i]).epsilon(1e-6));
      CHECK(sym[i] == doctest::Approx(-swapped[i]));
    }
  }
}

TEST_CASE("the exchange square over a Weil algebra") {
  std::mt19937_64 rng(9);
  for (const auto& a : {dual(), truncated(1, 2)}) {
    const auto pair = random_compatible_pair(a, 2, rng);
    CHECK(compatible_over(a, pair));
    const auto k = K_map(a, pair);
    CHECK(compatible(k.x, k.y));
    CHECK(exchange_square(a, pair).deviation < 1e-12);
  }
}

TEST_CASE("exchange lemma identities") {
  const auto d = dual();
  const auto t = truncated(1, 2);
  CHECK(check_lemma(d, t, d).worst() == 0.0);
  CHECK(check_lemma(t, d, t).worst() == 0.0);
}
