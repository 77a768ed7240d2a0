#include "weilcalc/weil_functor.hpp"

#include "weilcalc/algebra_io.hpp"
#include "weilcalc/error.hpp"

namespace weilcalc {

WeilPoint::WeilPoint(AlgebraRef algebra, std::vector<AlgebraElement> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  for (const auto& c : coords_)
    if (!same_algebra(c.algebra(), algebra_))
      throw Error(ErrorKind::AlgebraMismatch, "coordinate over " + c.algebra()->name() + " in a point over " +
                                                  algebra_->name());
}

WeilPoint WeilPoint::real(AlgebraRef algebra, std::span<const double> x) {
  std::vector<AlgebraElement> c;
  for (double v : x) c.push_back(AlgebraElement::constant(algebra, v));
  return WeilPoint(std::move(algebra), std::move(c));
}

WeilPoint WeilPoint::from_flat(AlgebraRef algebra, std::span<const double> flat) {
  const std::size_t d = algebra->dim();
  if (flat.size() % d != 0)
    throw Error(ErrorKind::ShapeMismatch, "flat length " + std::to_string(flat.size()) + " is not a multiple of " +
                                              std::to_string(d));
  std::vector<AlgebraElement> c;
  for (std::size_t i = 0; i < flat.size() / d; ++i)
    c.emplace_back(algebra, std::vector<double>(flat.begin() + i * d, flat.begin() + (i + 1) * d));
  return WeilPoint(std::move(algebra), std::move(c));
}

std::vector<double> WeilPoint::base() const {
  std::vector<double> out;
  for (const auto& c : coords_) out.push_back(c.real_part());
  return out;
}

std::vector<double> WeilPoint::flat() const {
  std::vector<double> out;
  for (const auto& c : coords_) out.insert(out.end(), c.coeffs().begin(), c.coeffs().end());
  return out;
}

double max_abs_diff(const WeilPoint& a, const WeilPoint& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::ShapeMismatch, "points of different dimension");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, max_abs_diff(a[i], b[i]));
  return worst;
}

WeilPoint LiftedMap::operator()(const WeilPoint& p) const {
  if (!same_algebra(p.algebra(), algebra_))
    throw Error(ErrorKind::AlgebraMismatch, "map lifted over " + algebra_->name() + " applied to a point over " +
                                                p.algebra()->name());
  return WeilPoint(algebra_, f_(algebra_, p.coords()));
}

LiftedMap lift(AlgebraRef algebra, Program f) { return LiftedMap(std::move(algebra), std::move(f)); }

WeilPoint transform(const AlgebraHom& mu, const WeilPoint& p) {
  std::vector<AlgebraElement> c;
  for (const auto& x : p.coords()) c.push_back(mu(x));
  return WeilPoint(mu.target(), std::move(c));
}

Program render_lift(const AlgebraRef& algebra, const Program& f) {
  const std::size_t d = algebra->dim();
  const std::size_t n = f.arity_in();
  std::vector<Element<Expr>> args;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> c;
    for (std::size_t k = 0; k < d; ++k) c.push_back(Expr::var(i * d + k));
    args.emplace_back(algebra, std::move(c));
  }
  const auto lifted = f.over<Expr>(algebra, args);
  std::vector<Expr> out;
  for (const auto& e : lifted) out.insert(out.end(), e.coeffs().begin(), e.coeffs().end());
  return Program(n * d, std::move(out));
}

WeilPoint flatten(const IteratedPoint& p) {
  const std::size_t da = p.inner->dim();
  const std::size_t db = p.outer->dim();
  if (!same_algebra(p.point.algebra(), p.outer) || p.point.dim() % da != 0)
    throw Error(ErrorKind::ShapeMismatch, "iterated point does not match " + p.outer->name() + " over " +
                                              p.inner->name());
  const auto ab = tensor(p.outer, p.inner);
  std::vector<AlgebraElement> c;
  for (std::size_t i = 0; i < p.point.dim() / da; ++i) {
    AlgebraElement e(ab);
    // b (x) a sits at b + db * a.
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t b = 0; b < db; ++b) e[b + db * a] = p.point[i * da + a][b];
    c.push_back(std::move(e));
  }
  return WeilPoint(ab, std::move(c));
}

IteratedPoint unflatten(const AlgebraRef& outer, const AlgebraRef& inner, const WeilPoint& p) {
  const std::size_t da = inner->dim();
  const std::size_t db = outer->dim();
  if (!same_algebra(p.algebra(), tensor(outer, inner)))
    throw Error(ErrorKind::ShapeMismatch, "point over " + p.algebra()->name() + " is not over " + outer->name() +
                                              " (x) " + inner->name());
  std::vector<AlgebraElement> c;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t a = 0; a < da; ++a) {
      AlgebraElement e(outer);
      for (std::size_t b = 0; b < db; ++b) e[b] = p[i][b + db * a];
      c.push_back(std::move(e));
    }
  return {outer, inner, WeilPoint(outer, std::move(c))};
}

nlohmann::json to_json(const WeilPoint& p) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& c : p.coords()) coords.push_back(to_json(c));
  return {{"algebra", p.algebra()->name()}, {"coords", coords}};
}

WeilPoint weil_point_from_json(const AlgebraRef& algebra, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
    throw Error(ErrorKind::ParseError, "point needs a 'coords' array");
  std::vector<AlgebraElement> c;
  for (const auto& e : j["coords"]) c.push_back(element_from_json(algebra, e));
  return WeilPoint(algebra, std::move(c));
}

}  // namespace weilcalc
