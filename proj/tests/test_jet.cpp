#include <random>

#include "doctest.h"
#include "weilcalc/error.hpp"
#include "weilcalc/jet.hpp"
#include "weilcalc/oracles.hpp"

using namespace weilcalc;

namespace {
const Expr x = Expr::var(0);
const Expr y = Expr::var(1);
}  // namespace

TEST_CASE("jet group axioms") {
  std::mt19937_64 rng(2);
  for (auto [m, r] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 1}, {2, 2}, {1, 3}}) {
    const auto a = JetGroupElement::random(m, r, rng);
    const auto b = JetGroupElement::random(m, r, rng);
    const auto c = JetGroupElement::random(m, r, rng);
    const auto e = JetGroupElement::identity(m, r);
    CHECK(max_abs_diff(jet_compose(jet_compose(a, b), c), jet_compose(a, jet_compose(b, c))) < 1e-12);
    CHECK(max_abs_diff(jet_compose(a, e), a) < 1e-12);
    CHECK(max_abs_diff(jet_compose(e, a), a) < 1e-12);
    CHECK(max_abs_diff(jet_compose(a, jet_invert(a)), e) < 1e-12);
    CHECK(max_abs_diff(jet_compose(jet_invert(a), a), e) < 1e-12);
  }
}

TEST_CASE("composition of one-dimensional 2-jets") {
  // g(y) = 2y + y^2, h(y) = 3y: g o h = 6y + 9y^2, h o g = 6y + 3y^2
  const JetGroupElement g(1, 2, {2.0, 1.0});
  const JetGroupElement h(1, 2, {3.0, 0.0});
  CHECK(jet_compose(g, h).coeffs() == std::vector<double>{6.0, 9.0});
  CHECK(jet_compose(h, g).coeffs() == std::vector<double>{6.0, 3.0});
  const auto gi = jet_invert(g);
  CHECK(gi.coeff(0, 1) == doctest::Approx(0.5));
  CHECK(gi.coeff(0, 2) == doctest::Approx(-0.125));
}

TEST_CASE("singular linear part and bad shapes") {
  try {
    JetGroupElement(2, 1, {1.0, 2.0, 2.0, 4.0});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularLinearPart);
  }
  CHECK_THROWS_AS(JetGroupElement(1, 2, {1.0}), Error);
}

TEST_CASE("canonical action is a homomorphism") {
  std::mt19937_64 rng(4);
  const auto a = JetGroupElement::random(2, 2, rng);
  const auto b = JetGroupElement::random(2, 2, rng);
  const auto lhs = canonical_action(2, 2, jet_compose(a, b)).matrix();
  const auto rhs = compose(canonical_action(2, 2, a), canonical_action(2, 2, b)).matrix();
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) CHECK(lhs(i, j) == doctest::Approx(rhs(i, j)).epsilon(1e-10));
}

TEST_CASE("functor triples") {
  const auto jr = jr_triple(1, 2);
  CHECK(jr.algebra()->dim() == 3);
  CHECK(jr.kind() == FunctorTriple::ActionKind::canonical);
  CHECK(jr.generators().size() == 2);
  const auto tr = trivial_triple(dual(), 1, 1);
  for (const auto& g : tr.generators())
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) CHECK(g(i, j) == 0.0);

  const auto back = triple_from_json(to_json(jr));
  CHECK(back.describe() == jr.describe());
  nlohmann::json bad = {{"algebra", "dual"}, {"m", 2}, {"r", 1}, {"H", "canonical"}, {"t", "identity"}};
  CHECK_THROWS_AS(triple_from_json(bad), Error);
}

TEST_CASE("frame prolongation against the flow") {
  std::mt19937_64 rng(6);
  const Program xi(1, {sin(x) + x * x});
  const auto g = JetGroupElement::random(1, 2, rng);
  const double at[] = {0.4};
  const auto a = frame_prolong(xi, 2, at, g);
  const auto b = oracle::frame_flow(xi, 2, at, g);
  CHECK(a.x[0] == doctest::Approx(b.x[0]).epsilon(1e-8));
  for (std::size_t i = 0; i < a.g.size(); ++i) CHECK(std::abs(a.g[i] - b.g[i]) < 1e-5);
}

TEST_CASE("projectability") {
  CHECK_NOTHROW(check_projectable(1, Program(2, {x * x, x * y})));
  try {
    check_projectable(1, Program(2, {y, x}));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonProjectable);
  }
}

TEST_CASE("J^1 of a vertical field is the classical first prolongation") {
  // phi(x, u) d/du on R x R
  const Program phi(2, {x * y * y + sin(x)});
  const VectorField field(Program(2, {Expr(0.0), x * y * y + sin(x)}));
  const auto g = g_field_prolong(jr_triple(1, 1), field);
  // normalized coordinates (x, u, u1)
  const auto v = g.components()({0.3, 0.8, -1.2});
  const auto want = oracle::classical_prolongation(phi, 0.3, 0.8, -1.2);
  CHECK(v[1] == doctest::Approx(want[0]).epsilon(1e-8));
  CHECK(v[2] == doctest::Approx(want[1]).epsilon(1e-8));
}

TEST_CASE("G commutes with brackets") {
  const VectorField a(Program(2, {x * x, x * y + y * y}));
  const VectorField b(Program(2, {Expr(1.0) + x, sin(y) * x}));
  CHECK(check_g_bracket(jr_triple(1, 2), a, b, 20, 7, 1e-6).passed());
  CHECK(check_g_bracket(trivial_triple(truncated(1, 2), 1, 1), a, b, 20, 7, 1e-6).passed());
}
