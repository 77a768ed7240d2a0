#include <cmath>

#include "doctest.h"
#include "weilcalc/algebra.hpp"
#include "weilcalc/algebra_io.hpp"
#include "weilcalc/element.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/hom.hpp"

using namespace weilcalc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no Error thrown");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("dimensions, width and height of the constructors") {
  CHECK(reals()->dim() == 1);
  CHECK(reals()->height() == 0);
  CHECK(dual()->dim() == 2);
  CHECK(dual()->width() == 1);
  CHECK(dual()->height() == 1);

  const auto t22 = truncated(2, 2);
  CHECK(t22->dim() == 6);
  CHECK(t22->width() == 2);
  CHECK(t22->height() == 2);
  CHECK(truncated(1, 3)->height() == 3);

  const auto dd = tensor(dual(), dual());
  CHECK(dd->dim() == 4);
  CHECK(dd->width() == 2);
  CHECK(dd->height() == 2);

  const auto s = sum(dual(), dual());
  CHECK(s->dim() == 3);
  CHECK(s->width() == 2);
  CHECK(s->height() == 1);
}

TEST_CASE("graded monomial basis") {
  const auto e = monomial_exponents(2, 2);
  REQUIRE(e.size() == 6);
  CHECK(e[0] == std::vector<int>{0, 0});
  CHECK(e[1] == std::vector<int>{1, 0});
  CHECK(e[2] == std::vector<int>{0, 1});
  CHECK(e[3] == std::vector<int>{2, 0});
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(monomial_index(e[i], 2) == i);
  CHECK(binomial(5, 2) == 10);
}

TEST_CASE("dual number arithmetic") {
  const auto d = dual();
  const AlgebraElement x(d, {3.0, 1.0});
  const auto y = x * x * x;
  CHECK(y[0] == doctest::Approx(27.0));
  CHECK(y[1] == doctest::Approx(27.0));
  const auto s = sin(x);
  CHECK(s[0] == doctest::Approx(std::sin(3.0)));
  CHECK(s[1] == doctest::Approx(std::cos(3.0)));
  const auto inv = inverse(x);
  CHECK(inv[1] == doctest::Approx(-1.0 / 9.0));
  CHECK(kind_of([&] { (void)inverse(AlgebraElement(d, {0.0, 1.0})); }) == ErrorKind::DivisionByNilpotent);
  CHECK(kind_of([&] { (void)log(AlgebraElement(d, {-1.0, 1.0})); }) == ErrorKind::DomainError);
}

TEST_CASE("truncated polynomial arithmetic gives Taylor coefficients") {
  const auto a = truncated(1, 3);
  const AlgebraElement x(a, {0.5, 1.0, 0.0, 0.0});
  const auto e = exp(x);
  const double c = std::exp(0.5);
  CHECK(e[0] == doctest::Approx(c));
  CHECK(e[1] == doctest::Approx(c));
  CHECK(e[2] == doctest::Approx(c / 2));
  CHECK(e[3] == doctest::Approx(c / 6));
}

TEST_CASE("invalid tables are rejected with the violating triple") {
  // b1 * b1 = b0 is not nilpotent
  std::vector<double> st(8, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return st[(i * 2 + j) * 2 + k]; };
  at(0, 0, 0) = 1;
  at(0, 1, 1) = 1;
  at(1, 0, 1) = 1;
  at(1, 1, 0) = 1;
  CHECK(kind_of([&] { WeilAlgebra::create("bad", {"1", "e"}, 0, st); }) == ErrorKind::InvalidAlgebra);

  at(1, 1, 0) = 0;
  CHECK(WeilAlgebra::create("ok", {"1", "e"}, 0, st)->same_structure(*dual()));
  at(0, 1, 1) = 0;
  try {
    WeilAlgebra::create("noncomm", {"1", "e"}, 0, st);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidAlgebra);
    CHECK(e.detail().find("(") != std::string::npos);
  }
}

TEST_CASE("expression parser and JSON round trip") {
  const auto a = parse_algebra_expr("tensor(dual, truncated(1,2))");
  CHECK(a->dim() == 6);
  CHECK(parse_algebra_expr("sum(dual,dual)")->dim() == 3);
  CHECK(parse_algebra_expr("S()")->dim() == 5);
  CHECK(kind_of([] { parse_algebra_expr("tensor(dual,"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_algebra_expr("nosuch"); }) == ErrorKind::ParseError);

  const auto back = algebra_from_json(to_json(*a));
  CHECK(back->same_structure(*a));
  CHECK(back->basis() == a->basis());
  CHECK(back->width() == a->width());
}

TEST_CASE("rational strings and stored width checks") {
  nlohmann::json j = to_json(*dual());
  j["structure"] = nlohmann::json::array({{0, 0, 0, "1/1"}, {0, 1, 1, "2/2"}, {1, 0, 1, "1"}});
  CHECK(algebra_from_json(j)->same_structure(*dual()));
  j["width"] = 2;
  CHECK(kind_of([&] { algebra_from_json(j); }) == ErrorKind::InvalidAlgebra);
  j["width"] = "unspecified";
  CHECK(algebra_from_json(j)->width() == 1);
  j["structure"][0] = {0, 0, 9, 1};
  CHECK(kind_of([&] { algebra_from_json(j); }) == ErrorKind::ParseError);
}

TEST_CASE("homomorphisms") {
  const auto d = dual();
  const auto t = truncated(1, 2);
  CHECK(real_part(t).matrix().rows() == 1);
  CHECK(unit_inclusion(t).matrix().cols() == 1);

  // x -> e is a hom truncated(1,2) -> dual (x^2 -> 0)
  Matrix m(2, 3);
  m(0, 0) = 1;
  m(1, 1) = 1;
  const auto mu = AlgebraHom::create(t, d, m);
  const AlgebraElement x(t, {1.0, 2.0, 3.0});
  CHECK(mu(x)[1] == doctest::Approx(2.0));

  // x^2 -> e is not multiplicative
  Matrix bad(2, 3);
  bad(0, 0) = 1;
  bad(1, 2) = 1;
  CHECK(kind_of([&] { AlgebraHom::create(t, d, bad); }) == ErrorKind::NotMultiplicative);
  Matrix nonunital(2, 3);
  CHECK(kind_of([&] { AlgebraHom::create(t, d, nonunital); }) == ErrorKind::NotUnital);
  CHECK(kind_of([&] { AlgebraHom::create(t, d, Matrix(3, 3)); }) == ErrorKind::ShapeMismatch);

  const auto k = weilcalc::exchange(d, t);
  const auto kk = compose(weilcalc::exchange(t, d), k);
  const auto id = AlgebraHom::identity(tensor(d, t));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) CHECK(kk.matrix()(r, c) == id.matrix()(r, c));
  CHECK(kind_of([&] { (void)mu(AlgebraElement::basis(d, 1)); }) == ErrorKind::AlgebraMismatch);
}

TEST_CASE("subalgebra closure") {
  const auto t = truncated(1, 2);
  const auto one = AlgebraElement::basis(t, 0);
  const auto x2 = AlgebraElement::basis(t, 2);
  const auto sub = subalgebra(t, {one, x2}, {"1", "x2"}, "sq");
  CHECK(sub.algebra->dim() == 2);
  CHECK(sub.algebra->height() == 1);

  const auto t3 = truncated(1, 3);
  const auto y = AlgebraElement::basis(t3, 1);
  CHECK(kind_of([&] { subalgebra(t3, {AlgebraElement::basis(t3, 0), y}, {"1", "x"}, "x"); }) ==
        ErrorKind::SpanNotClosed);
}
