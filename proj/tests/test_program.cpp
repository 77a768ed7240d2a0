#include <cmath>
#include <random>

#include "doctest.h"
#include "weilcalc/error.hpp"
#include "weilcalc/expr.hpp"
#include "weilcalc/program.hpp"

using namespace weilcalc;

namespace {
const Expr x = Expr::var(0);
const Expr y = Expr::var(1);
}  // namespace

TEST_CASE("evaluation over doubles and symbolic substitution") {
  const Program p(2, {x * y + sin(x), ipow(y, 3) - 2.0});
  const auto v = p({0.5, 2.0});
  CHECK(v[0] == doctest::Approx(1.0 + std::sin(0.5)));
  CHECK(v[1] == doctest::Approx(6.0));

  const std::vector<Expr> args = {y, x};
  const auto swapped = Program(2, p.substitute(args));
  CHECK(swapped({2.0, 0.5})[0] == doctest::Approx(v[0]));
}

TEST_CASE("arity errors") {
  CHECK_THROWS_AS(Program(1, {y}), Error);
  try {
    Program(1, {y});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
}

TEST_CASE("constant folding and trivial identities") {
  CHECK((Expr(2.0) * Expr(3.0)).is_const());
  CHECK((x - x).is_const());
  CHECK(to_string(Program(1, {x + 0.0})) == "[x]");
}

TEST_CASE("partial programs") {
  CHECK(Program(1, {x / y * 0.0 + log(x)}).is_partial() == true);
  CHECK(Program(1, {x * x}).is_partial() == false);
}

TEST_CASE("compose and concat") {
  const Program f(1, {x * x});
  const Program g(1, {x + 1.0});
  CHECK(compose(f, g)({2.0})[0] == doctest::Approx(9.0));
  const auto c = concat({f, g});
  CHECK(c.arity_out() == 2);
  CHECK(c({3.0})[1] == doctest::Approx(4.0));
}

TEST_CASE("JSON round trip") {
  const Program p(2, {exp(x) / (1.0 + y * y), sqrt(x) - cos(y), ipow(x, 4)});
  const auto back = program_from_json(to_json(p));
  const auto a = p({0.7, -1.1});
  const auto b = back({0.7, -1.1});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  nlohmann::json bad = to_json(p);
  bad["exprs"][0] = {{"op", "frob"}};
  CHECK_THROWS_AS(program_from_json(bad), Error);
}

TEST_CASE("polynomial normal form prints readably") {
  CHECK(to_string(expand_polynomial(x * (x + 1.0) - x), {"x"}) == "x^2");
  CHECK(to_string(expand_polynomial(-(2.0 * x)), {"x"}) == "-2*x");
}

TEST_CASE("Jacobian oracle and random programs") {
  std::mt19937_64 rng(3);
  const auto p = random_polynomial(2, 2, rng);
  CHECK(p.arity_in() == 2);
  CHECK(p.arity_out() == 2);
  const Program q(2, {x * x * y});
  const double at[] = {1.5, 2.0};
  const auto j = jacobian_oracle(q, at, 1e-4, true);
  CHECK(j(0, 0) == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(j(0, 1) == doctest::Approx(2.25).epsilon(1e-8));
}
