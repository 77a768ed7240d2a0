#include "weilcalc/hom.hpp"

#include <cmath>
#include <sstream>

#include "weilcalc/error.hpp"

namespace weilcalc {

namespace {

std::vector<double> target_product(const WeilAlgebra& t, std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(t.dim(), 0.0);
  for (const auto& e : t.entries()) out[e.k] += a[e.i] * b[e.j] * e.c;
  return out;
}

}  // namespace

HomCheck check_hom(const WeilAlgebra& s, const WeilAlgebra& t, const Matrix& m) {
  HomCheck out;
  std::vector<double> expect_unit(t.dim(), 0.0);
  expect_unit[t.unit_index()] = 1.0;
  out.unit_error = max_abs_diff(m.column(s.unit_index()), expect_unit);

  std::vector<std::vector<double>> cols(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) cols[i] = m.column(i);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i; j < s.dim(); ++j) {
      std::vector<double> image(t.dim(), 0.0);
      for (std::size_t k = 0; k < s.dim(); ++k) {
        const double c = s.c(i, j, k);
        if (c == 0.0) continue;
        for (std::size_t r = 0; r < t.dim(); ++r) image[r] += c * cols[k][r];
      }
      const double err = max_abs_diff(image, target_product(t, cols[i], cols[j]));
      if (err > out.product_error) {
        out.product_error = err;
        out.worst_i = i;
        out.worst_j = j;
      }
    }
  return out;
}

AlgebraHom AlgebraHom::create(AlgebraRef source, AlgebraRef target, Matrix matrix, double tol) {
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw Error(ErrorKind::ShapeMismatch, "hom matrix must be " + std::to_string(target->dim()) + "x" +
                                              std::to_string(source->dim()));
  const HomCheck check = check_hom(*source, *target, matrix);
  if (check.unit_error > tol)
    throw Error(ErrorKind::NotUnital, "unit of " + source->name() + " maps off the unit of " + target->name() +
                                          " (error " + std::to_string(check.unit_error) + ")");
  if (check.product_error > tol) {
    std::ostringstream os;
    os << "product of (" << source->basis()[check.worst_i] << ", " << source->basis()[check.worst_j]
       << ") not preserved, residual " << check.product_error;
    throw Error(ErrorKind::NotMultiplicative, os.str());
  }
  return AlgebraHom(std::move(source), std::move(target), std::move(matrix));
}

AlgebraHom AlgebraHom::identity(AlgebraRef algebra) {
  const std::size_t d = algebra->dim();
  return AlgebraHom(algebra, algebra, Matrix::identity(d));
}

AlgebraHom compose(const AlgebraHom& outer, const AlgebraHom& inner) {
  if (!same_algebra(inner.target(), outer.source()))
    throw Error(ErrorKind::AlgebraMismatch,
                "cannot compose: " + inner.target()->name() + " vs " + outer.source()->name());
  return AlgebraHom::create(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

AlgebraHom real_part(const AlgebraRef& a) {
  Matrix m(1, a->dim());
  m(0, a->unit_index()) = 1.0;
  return AlgebraHom::create(a, reals(), std::move(m));
}

AlgebraHom unit_inclusion(const AlgebraRef& a) {
  Matrix m(a->dim(), 1);
  m(a->unit_index(), 0) = 1.0;
  return AlgebraHom::create(reals(), a, std::move(m));
}

AlgebraHom exchange(const AlgebraRef& a, const AlgebraRef& b) {
  const std::size_t da = a->dim();
  const std::size_t db = b->dim();
  Matrix m(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) m(j + db * i, i + da * j) = 1.0;
  return AlgebraHom::create(tensor(a, b), tensor(b, a), std::move(m));
}

AlgebraHom hom_tensor(const AlgebraHom& mu, const AlgebraRef& c, Side side) {
  const Matrix& m = mu.matrix();
  const std::size_t dc = c->dim();
  const std::size_t ds = m.cols();
  const std::size_t dt = m.rows();
  Matrix out(dt * dc, ds * dc);
  if (side == Side::left) {
    // C (x) A -> C (x) B; index c + dc * a.
    for (std::size_t ci = 0; ci < dc; ++ci)
      for (std::size_t r = 0; r < dt; ++r)
        for (std::size_t s = 0; s < ds; ++s) out(ci + dc * r, ci + dc * s) = m(r, s);
    return AlgebraHom::create(tensor(c, mu.source()), tensor(c, mu.target()), std::move(out));
  }
  // A (x) C -> B (x) C; index a + da * c.
  for (std::size_t ci = 0; ci < dc; ++ci)
    for (std::size_t r = 0; r < dt; ++r)
      for (std::size_t s = 0; s < ds; ++s) out(r + dt * ci, s + ds * ci) = m(r, s);
  return AlgebraHom::create(tensor(mu.source(), c), tensor(mu.target(), c), std::move(out));
}

Subalgebra subalgebra(const AlgebraRef& ambient, const std::vector<AlgebraElement>& span,
                      std::vector<std::string> labels, std::string name, double tol) {
  const std::size_t d = span.size();
  const std::size_t n = ambient->dim();
  if (d == 0) throw Error(ErrorKind::SpanNotClosed, "empty span");
  if (labels.size() != d) throw Error(ErrorKind::ShapeMismatch, "one label per span element required");
  Matrix s(n, d);
  for (std::size_t c = 0; c < d; ++c) {
    if (!same_algebra(span[c].algebra(), ambient))
      throw Error(ErrorKind::AlgebraMismatch, "span element " + labels[c] + " is not in " + ambient->name());
    for (std::size_t r = 0; r < n; ++r) s(r, c) = span[c][r];
  }
  std::size_t unit = d;
  const auto one = AlgebraElement::constant(ambient, 1.0);
  for (std::size_t c = 0; c < d; ++c)
    if (max_abs_diff(span[c], one) <= tol) unit = c;
  if (unit == d) throw Error(ErrorKind::SpanNotClosed, "span does not contain the unit");

  std::vector<double> structure(d * d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const AlgebraElement p = span[i] * span[j];
      const auto solved = solve_columns(s, p.coeffs(), tol);
      if (!solved) throw Error(ErrorKind::SpanNotClosed, "span elements are linearly dependent");
      if (solved->residual > tol) {
        std::ostringstream os;
        os << "product " << labels[i] << " * " << labels[j] << " leaves the span, residual " << solved->residual;
        throw Error(ErrorKind::SpanNotClosed, os.str());
      }
      for (std::size_t k = 0; k < d; ++k) structure[(i * d + j) * d + k] = solved->x[k];
    }
  auto alg = WeilAlgebra::create(std::move(name), std::move(labels), unit, std::move(structure), tol);
  auto inclusion = AlgebraHom::create(alg, ambient, std::move(s), tol);
  return {std::move(alg), std::move(inclusion)};
}

}  // namespace weilcalc
