#include <random>

#include "doctest.h"
#include "weilcalc/error.hpp"
#include "weilcalc/functional.hpp"
#include "weilcalc/oracles.hpp"

using namespace weilcalc;

namespace {
const Expr v0 = Expr::var(0);
const Expr v1 = Expr::var(1);
const Expr v2 = Expr::var(2);
const Expr v3 = Expr::var(3);

// D1 = y z0, D2 = z1 on F(R x R, R x R)
FunctionalVectorField x1() { return {FunctionalSignature{1, 1, 1}, 0, Program(1, {Expr(0.0)}), Program(3, {v1 * v2})}; }
FunctionalVectorField x2() { return {FunctionalSignature{1, 1, 1}, 1, Program(1, {Expr(0.0)}), Program(4, {v3})}; }
}  // namespace

TEST_CASE("jet coordinates are derivatives") {
  const Program h(1, {ipow(v0, 3)});
  const double y[] = {2.0};
  const auto j = jets_of(h, y, 2);
  REQUIRE(j.size() == 3);
  CHECK(j[0] == doctest::Approx(8.0));
  CHECK(j[1] == doctest::Approx(12.0));
  CHECK(j[2] == doctest::Approx(12.0));
  CHECK(jet_block_count(2, 2) == 6);
}

TEST_CASE("jet names") {
  CHECK(jet_names({1, 1, 1}, 1) == std::vector<std::string>{"x", "y", "z0", "z1"});
  const auto n = jet_names({1, 2, 1}, 1);
  REQUIRE(n.size() == 1 + 2 + 3);
  CHECK(n[3] == "z00");
}

TEST_CASE("[y z0, z1] = z0") {
  const auto b = functional_bracket(x1(), x2());
  CHECK(b.order() == 1);
  const Program h(1, {v0 * v0 + 3.0 * v0});
  const double x[] = {0.5};
  for (double yy : {-1.0, 0.0, 0.7}) {
    const double y[] = {yy};
    CHECK(b.vertical(x, h, y)[0] == doctest::Approx(h(y)[0]));
    CHECK(b.base(x)[0] == 0.0);
  }
}

TEST_CASE("arity of D is checked") {
  CHECK_THROWS_AS(FunctionalVectorField({1, 1, 1}, 1, Program(1, {Expr(0.0)}), Program(3, {v1})), Error);
  CHECK(x2().with_order(3).D().arity_in() == 2 + 4);
}

TEST_CASE("A-velocity of a family of maps") {
  // u -> (u, y -> u y^2) at u0 = 2 along e
  const auto d = dual();
  const Program family(2, {v0 * v1 * v1});
  const Program base(1, {v0});
  const double u0[] = {2.0};
  const auto p = functional_lift(d, family, base, u0, default_generators(d));
  CHECK(p.a[0][0] == 2.0);
  CHECK(p.a[0][1] == 1.0);
  const auto v = p.h({3.0});
  CHECK(v[0] == doctest::Approx(18.0));
  CHECK(v[1] == doctest::Approx(9.0));

  // rho to the reals forgets the velocity
  const auto q = reparametrize(real_part(d), p);
  CHECK(q.h.arity_out() == 1);
  CHECK(q.h({3.0})[0] == doctest::Approx(18.0));
  CHECK(q.a[0][0] == 2.0);
}

TEST_CASE("default generators span N modulo N^2") {
  CHECK(default_generators(dual()).size() == 1);
  CHECK(default_generators(truncated(2, 2)).size() == 2);
  CHECK(default_generators(tensor(dual(), dual())).size() == 2);
}

TEST_CASE("F on fibered maps is a functor") {
  // f1(x, y) = 2y, f2(x, z) = z + x, base x + 1
  const FunctionalMorphism f{Program(1, {v0 + 1.0}), Program(2, {v1 / 2.0}), Program(2, {v1 + v0})};
  const FunctionalPoint p{{1.0}, Program(1, {v0 * v0})};
  const auto q = fmorphism_apply(f, p);
  CHECK(q.x[0] == 2.0);
  CHECK(q.h({3.0})[0] == doctest::Approx(2.25 + 1.0));

  // g o f against F(g) F(f); g: base x * 3, g1(y) = y - 1, g2(x, z) = x z
  const FunctionalMorphism g{Program(1, {3.0 * v0}), Program(2, {v1 + 1.0}), Program(2, {v0 * v1})};
  const auto gf_apply = fmorphism_apply(g, q);
  // (g o f): base 3(x+1), fiber inverse y'' -> (y'' + 1)/2, fiber z -> (x+1)(z + x)
  const FunctionalMorphism gf{Program(1, {3.0 * (v0 + 1.0)}), Program(2, {(v1 + 1.0) / 2.0}),
                              Program(2, {(v0 + 1.0) * (v1 + v0)})};
  const auto direct = fmorphism_apply(gf, p);
  CHECK(direct.x[0] == doctest::Approx(gf_apply.x[0]));
  for (double y : {-1.0, 0.5, 2.0}) CHECK(direct.h({y})[0] == doctest::Approx(gf_apply.h({y})[0]));
}

TEST_CASE("functional prolongation commutes with brackets") {
  std::mt19937_64 rng(17);
  const auto a = random_functional_field({1, 1, 1}, 1, rng);
  const auto b = random_functional_field({1, 1, 1}, 1, rng);
  for (const auto& alg : {dual(), truncated(1, 2)}) {
    CHECK(check_prolong_bracket_functional(alg, a, b, 10, 3, 1e-6).passed());
    CHECK(check_prolong_bracket_functional(alg, x1(), x2(), 10, 3, 1e-6).passed());
  }
  CHECK(check_g_bracket_functional(jr_triple(1, 1), a, b, 10, 3, 1e-6).passed());
  CHECK(check_g_bracket_functional(trivial_triple(dual(), 1, 1), a, b, 10, 3, 1e-6).passed());
}

TEST_CASE("prolongation over the reals is the identity") {
  std::mt19937_64 rng(1);
  const auto a = random_functional_field({1, 2, 1}, 1, rng);
  const auto p = functional_field_prolong(reals(), a);
  const auto h = random_fiber_map(2, 1, 3, rng);
  const double x[] = {0.2};
  const double y[] = {-0.3, 0.6};
  CHECK(field_deviation(p, a, x, h, y) < 1e-12);
}

TEST_CASE("order-r morphisms only see r-jets") {
  std::mt19937_64 rng(8);
  OrderRMorphism d;
  d.r = 1;
  d.sig = {1, 1, 1};
  d.base = Program::identity(1);
  d.q = Program(2, {v0 + v1});
  d.fc = random_polynomial(1 + 1 + 2 + 2, 1, rng);
  CHECK(check_locality(d, 10, 5, 1e-10).passed());
  d.fc = Program(3, {v0});
  CHECK_THROWS_AS(d.validate(), Error);
}

TEST_CASE("polynomial families reduce to a finite-dimensional bracket") {
  oracle::PolyFamilyField a{Program(1, {v0 * v0}), {Program(1, {v0}), Program(1, {Expr(1.0)}), Program(1, {Expr(0.5)}),
                                                    Program(1, {Expr(0.0)})}};
  oracle::PolyFamilyField b{Program(1, {Expr(1.0)}), {Program(1, {Expr(0.0)}), Program(1, {v0}),
                                                      Program(1, {Expr(0.0)}), Program(1, {Expr(2.0)})}};
  const auto br = functional_bracket(oracle::to_functional(a), oracle::to_functional(b));
  const std::vector<double> state = {0.3, 1.0, -0.5, 0.25, 0.1, 0.0};  // x, c0..c4
  const auto fd = oracle::coefficient_bracket(a, b, 4, state);
  const double x[] = {0.3};
  CHECK(br.base(x)[0] == doctest::Approx(fd[0]).epsilon(1e-7));
  const Program h(1, {1.0 - 0.5 * v0 + 0.25 * v0 * v0 + 0.1 * ipow(v0, 3)});
  const auto c = oracle::vandermonde_coefficients(
      [&](double yy) {
        const double y[] = {yy};
        return br.vertical(x, h, y)[0];
      },
      4);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(c[k] - fd[1 + k]) < 1e-7);
}

TEST_CASE("JSON round trip") {
  const auto j = to_json(x2());
  const auto back = functional_field_from_json(j);
  CHECK(back.order() == 1);
  CHECK(back.signature() == x2().signature());
  nlohmann::json bad = j;
  bad["r"] = 0;
  CHECK_THROWS_AS(functional_field_from_json(bad), Error);
}
