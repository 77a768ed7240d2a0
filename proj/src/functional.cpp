#include "weilcalc/functional.hpp"

#include <map>

#include "weilcalc/error.hpp"
#include "weilcalc/strong_difference.hpp"

namespace weilcalc {

namespace {

double factorial(const std::vector<int>& alpha) {
  double f = 1.0;
  for (int a : alpha)
    for (int i = 2; i <= a; ++i) f *= i;
  return f;
}

std::vector<Expr> var_range(std::size_t from, std::size_t count) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(Expr::var(from + i));
  return out;
}

std::size_t d_arity(const FunctionalSignature& sig, std::size_t r) {
  return sig.m + sig.q1 + jet_block_count(sig.q1, r) * sig.q2;
}

// Symbolic context for a field of order R: variable layout and multi-index lookup.
struct JetVars {
  FunctionalSignature sig;
  std::size_t order;
  std::vector<std::vector<int>> mons;
  std::map<std::vector<int>, std::size_t> index;

  JetVars(FunctionalSignature s, std::size_t r) : sig(s), order(r), mons(monomial_exponents(s.q1, r)) {
    for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
  }
  [[nodiscard]] std::size_t arity() const { return d_arity(sig, order); }
  [[nodiscard]] Expr x(std::size_t i) const { return Expr::var(i); }
  [[nodiscard]] Expr y(std::size_t j) const { return Expr::var(sig.m + j); }
  [[nodiscard]] Expr z(std::size_t alpha, std::size_t s) const { return Expr::var(sig.m + sig.q1 + alpha * sig.q2 + s); }
  [[nodiscard]] std::vector<Expr> prefix(std::size_t r) const { return var_range(0, d_arity(sig, r)); }
};

// e-part of D_a evaluated at (x + xi_b e, y, z + d^beta V_b e): the derivative of
// (x, h) -> D_a(x, y, j h(y)) along the field b.
std::vector<Expr> derivative_along(const JetVars& v, const FunctionalVectorField& a, const FunctionalVectorField& b) {
  const auto& sig = v.sig;
  const std::size_t ra = a.order();
  const std::size_t rb = b.order();
  const auto tr = truncated(sig.q1, std::max<std::size_t>(ra, 1));
  const auto tmons = monomial_exponents(sig.q1, ra);

  // Total jets of V_b = D_b(x, y, j h(y)) up to order ra.
  std::vector<Element<Expr>> targs;
  for (std::size_t i = 0; i < sig.m; ++i) targs.push_back(Element<Expr>::constant(tr, v.x(i)));
  for (std::size_t j = 0; j < sig.q1; ++j) {
    auto e = Element<Expr>::constant(tr, v.y(j));
    e[j + 1] = Expr(1.0);
    targs.push_back(std::move(e));
  }
  const auto bmons = monomial_exponents(sig.q1, rb);
  for (const auto& alpha : bmons)
    for (std::size_t s = 0; s < sig.q2; ++s) {
      Element<Expr> e(tr);
      for (std::size_t g = 0; g < tmons.size(); ++g) {
        std::vector<int> sum(sig.q1);
        for (std::size_t c = 0; c < sig.q1; ++c) sum[c] = alpha[c] + tmons[g][c];
        e[g] = v.z(v.index.at(sum), s) / Expr(factorial(tmons[g]));
      }
      targs.push_back(std::move(e));
    }
  const auto w = b.D().over<Expr>(tr, targs);

  const auto xi_b = b.xi().substitute(var_range(0, sig.m));
  std::vector<Element<Expr>> dargs;
  for (std::size_t i = 0; i < sig.m; ++i) dargs.emplace_back(dual(), std::vector<Expr>{v.x(i), xi_b[i]});
  for (std::size_t j = 0; j < sig.q1; ++j) dargs.push_back(Element<Expr>::constant(dual(), v.y(j)));
  for (std::size_t g = 0; g < tmons.size(); ++g)
    for (std::size_t s = 0; s < sig.q2; ++s)
      dargs.emplace_back(dual(), std::vector<Expr>{v.z(g, s), w[s][g] * Expr(factorial(tmons[g]))});
  std::vector<Expr> out;
  for (const auto& e : a.D().over<Expr>(dual(), dargs)) out.push_back(e[1]);
  return out;
}

std::vector<double> uniform_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

}  // namespace

std::size_t jet_block_count(std::size_t q1, std::size_t r) { return binomial(q1 + r, r); }

std::vector<double> jets_of(const Program& h, std::span<const double> y, std::size_t r) {
  const std::size_t q1 = y.size();
  if (h.arity_in() != q1) throw Error(ErrorKind::ArityMismatch, "fiber map arity does not match the point");
  if (q1 == 0) throw Error(ErrorKind::ArityMismatch, "fiber dimension must be positive");
  const auto tr = truncated(q1, std::max<std::size_t>(r, 1));
  const auto mons = monomial_exponents(q1, r);
  std::vector<AlgebraElement> args;
  for (std::size_t j = 0; j < q1; ++j) args.push_back(AlgebraElement::basis(tr, j + 1) + y[j]);
  const auto vals = h(tr, args);
  const std::size_t q2 = vals.size();
  std::vector<double> out(mons.size() * q2);
  for (std::size_t a = 0; a < mons.size(); ++a)
    for (std::size_t s = 0; s < q2; ++s) out[a * q2 + s] = vals[s][a] * factorial(mons[a]);
  return out;
}

FunctionalVectorField::FunctionalVectorField(FunctionalSignature sig, std::size_t r, Program xi, Program d)
    : sig_(sig), r_(r), xi_(std::move(xi)), d_(std::move(d)) {
  if (sig_.q1 == 0 || sig_.q2 == 0) throw Error(ErrorKind::ArityMismatch, "q1 and q2 must be positive");
  if (xi_.arity_in() != sig_.m || xi_.arity_out() != sig_.m)
    throw Error(ErrorKind::ArityMismatch, "xi must map R^" + std::to_string(sig_.m) + " to itself");
  if (d_.arity_in() != d_arity(sig_, r_) || d_.arity_out() != sig_.q2)
    throw Error(ErrorKind::ArityMismatch, "D must have " + std::to_string(d_arity(sig_, r_)) + " inputs and " +
                                              std::to_string(sig_.q2) + " outputs, has " +
                                              std::to_string(d_.arity_in()) + " and " + std::to_string(d_.arity_out()));
}

FunctionalVectorField FunctionalVectorField::with_order(std::size_t r) const {
  if (r < r_) throw Error(ErrorKind::ArityMismatch, "cannot lower the order of a field");
  return {sig_, r, xi_, Program(d_arity(sig_, r), d_.outputs())};
}

std::vector<double> FunctionalVectorField::vertical(std::span<const double> x, const Program& h,
                                                    std::span<const double> y) const {
  if (h.arity_out() != sig_.q2) throw Error(ErrorKind::ArityMismatch, "fiber map has the wrong target dimension");
  const auto jets = jets_of(h, y, r_);
  return vertical_from_jets(x, y, jets);
}

std::vector<double> FunctionalVectorField::vertical_from_jets(std::span<const double> x, std::span<const double> y,
                                                              std::span<const double> jets) const {
  const std::size_t nj = jet_block_count(sig_.q1, r_) * sig_.q2;
  if (x.size() != sig_.m || y.size() != sig_.q1 || jets.size() < nj)
    throw Error(ErrorKind::ArityMismatch, "point does not match the field signature");
  std::vector<double> args(x.begin(), x.end());
  args.insert(args.end(), y.begin(), y.end());
  args.insert(args.end(), jets.begin(), jets.begin() + static_cast<std::ptrdiff_t>(nj));
  return d_(args);
}

void OrderRMorphism::validate() const {
  if (base.arity_in() != sig.m || base.arity_out() != sig.m)
    throw Error(ErrorKind::ArityMismatch, "morphism base map must be R^m -> R^m");
  if (q.arity_out() != sig.q1) throw Error(ErrorKind::ArityMismatch, "q must land in the E1 fiber");
  if (fc.arity_in() != d_arity(sig, r) + q.arity_in())
    throw Error(ErrorKind::ArityMismatch, "f^c must take x, y, the jets and v");
}

std::vector<double> morphism_apply(const OrderRMorphism& d, const FunctionalPoint& p, std::span<const double> v) {
  d.validate();
  if (p.x.size() != d.sig.m || p.h.arity_in() != d.sig.q1 || p.h.arity_out() != d.sig.q2 ||
      v.size() != d.q.arity_in())
    throw Error(ErrorKind::ArityMismatch, "point does not match the morphism");
  const auto y = d.q(v);
  const auto jets = jets_of(p.h, y, d.r);
  std::vector<double> args = p.x;
  args.insert(args.end(), y.begin(), y.end());
  args.insert(args.end(), jets.begin(), jets.end());
  args.insert(args.end(), v.begin(), v.end());
  return d.fc(args);
}

FunctionalPoint fmorphism_apply(const FunctionalMorphism& f, const FunctionalPoint& p) {
  const std::size_t m = p.x.size();
  if (f.base.arity_in() != m || f.base.arity_out() != m || f.f1_inverse.arity_in() < m ||
      f.f1_inverse.arity_out() != p.h.arity_in() || f.f2.arity_in() != m + p.h.arity_out())
    throw Error(ErrorKind::ArityMismatch, "fibered maps do not match the functional point");
  const auto x_new = f.base(p.x);
  const std::size_t q1_new = f.f1_inverse.arity_in() - m;
  std::vector<Expr> inv_args;
  for (double c : x_new) inv_args.emplace_back(c);
  for (std::size_t j = 0; j < q1_new; ++j) inv_args.push_back(Expr::var(j));
  const auto y_old = f.f1_inverse.substitute(inv_args);
  const auto h_val = p.h.substitute(y_old);
  std::vector<Expr> f2_args;
  for (double c : p.x) f2_args.emplace_back(c);
  f2_args.insert(f2_args.end(), h_val.begin(), h_val.end());
  return {x_new, Program(q1_new, f.f2.substitute(f2_args))};
}

std::vector<AlgebraElement> default_generators(const AlgebraRef& algebra) {
  const std::size_t d = algebra->dim();
  const std::size_t u = algebra->unit_index();
  std::vector<std::vector<double>> cols;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == u || j == u) continue;
      const auto p = AlgebraElement::basis(algebra, i) * AlgebraElement::basis(algebra, j);
      cols.push_back(p.coeffs());
    }
  auto rank_of = [&](const std::vector<std::vector<double>>& cs) {
    if (cs.empty()) return std::size_t{0};
    Matrix mat(d, cs.size());
    for (std::size_t c = 0; c < cs.size(); ++c)
      for (std::size_t r = 0; r < d; ++r) mat(r, c) = cs[c][r];
    return rank(mat, 1e-10);
  };
  std::size_t current = rank_of(cols);
  std::vector<AlgebraElement> out;
  for (std::size_t k = 0; k < d; ++k) {
    if (k == u) continue;
    auto e = AlgebraElement::basis(algebra, k);
    cols.push_back(e.coeffs());
    const std::size_t next = rank_of(cols);
    if (next > current) {
      current = next;
      out.push_back(std::move(e));
    } else {
      cols.pop_back();
    }
  }
  return out;
}

FunctionalWeilPoint functional_lift(const AlgebraRef& algebra, const Program& family, const Program& base,
                                    std::span<const double> u0, const std::vector<AlgebraElement>& generators) {
  const std::size_t k = u0.size();
  if (generators.size() != k || base.arity_in() != k || family.arity_in() < k)
    throw Error(ErrorKind::ArityMismatch, "family, base and generators need one parameter each");
  const std::size_t q1 = family.arity_in() - k;
  const std::size_t da = algebra->dim();

  std::vector<AlgebraElement> u;
  std::vector<Element<Expr>> args;
  for (std::size_t i = 0; i < k; ++i) {
    if (!same_algebra(generators[i].algebra(), algebra))
      throw Error(ErrorKind::AlgebraMismatch, "generator is not in " + algebra->name());
    u.push_back(generators[i] + u0[i]);
    Element<Expr> e(algebra);
    for (std::size_t c = 0; c < da; ++c) e[c] = Expr(u.back()[c]);
    args.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < q1; ++j) args.push_back(Element<Expr>::constant(algebra, Expr::var(j)));
  std::vector<Expr> out;
  for (const auto& e : family.over<Expr>(algebra, args))
    for (std::size_t c = 0; c < da; ++c) out.push_back(e[c]);
  return {WeilPoint(algebra, base(algebra, u)), Program(q1, std::move(out))};
}

FunctionalWeilPoint reparametrize(const AlgebraHom& mu, const FunctionalWeilPoint& p) {
  const std::size_t da = mu.source()->dim();
  const std::size_t db = mu.target()->dim();
  if (p.h.arity_out() % da != 0) throw Error(ErrorKind::ShapeMismatch, "fiber map is not A-valued");
  const auto& mat = mu.matrix();
  std::vector<Expr> out;
  for (std::size_t s = 0; s < p.h.arity_out() / da; ++s)
    for (std::size_t j = 0; j < db; ++j) {
      Expr acc;
      for (std::size_t k = 0; k < da; ++k)
        if (mat(j, k) != 0.0) acc = acc + Expr(mat(j, k)) * p.h.output(s * da + k);
      out.push_back(acc);
    }
  return {transform(mu, p.a), Program(p.h.arity_in(), std::move(out))};
}

FunctionalVectorField functional_bracket(const FunctionalVectorField& x1, const FunctionalVectorField& x2) {
  if (!(x1.signature() == x2.signature()))
    throw Error(ErrorKind::ArityMismatch, "bracket of functional fields with different signatures");
  const auto sig = x1.signature();
  const std::size_t order = x1.order() + x2.order();
  const JetVars v(sig, order);

  const auto v1 = x1.D().substitute(v.prefix(x1.order()));
  const auto v2 = x2.D().substitute(v.prefix(x2.order()));
  const auto w21 = derivative_along(v, x2, x1);  // D2 along X1
  const auto w12 = derivative_along(v, x1, x2);  // D1 along X2

  const auto& sigma = make_S().sigma;
  std::vector<Expr> vertical;
  for (std::size_t s = 0; s < sig.q2; ++s) {
    const auto d = sigma.apply(embed_pair<Expr>(v.z(0, s), v1[s], v2[s], w21[s], w12[s]));
    vertical.push_back(d[1]);
  }
  const auto base = bracket(VectorField(x1.xi()), VectorField(x2.xi()));
  return {sig, order, base.components(), Program(v.arity(), std::move(vertical))};
}

FunctionalVectorField functional_field_prolong(const AlgebraRef& algebra, const FunctionalVectorField& x) {
  const auto sig = x.signature();
  const std::size_t da = algebra->dim();
  const FunctionalSignature out_sig{sig.m * da, sig.q1, sig.q2 * da};
  const std::size_t blocks = jet_block_count(sig.q1, x.order());

  std::size_t next = 0;
  auto element_of_vars = [&] {
    Element<Expr> e(algebra);
    for (std::size_t k = 0; k < da; ++k) e[k] = Expr::var(next++);
    return e;
  };
  std::vector<Element<Expr>> args;
  for (std::size_t i = 0; i < sig.m; ++i) args.push_back(element_of_vars());
  for (std::size_t j = 0; j < sig.q1; ++j) args.push_back(Element<Expr>::constant(algebra, Expr::var(next++)));
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t s = 0; s < sig.q2; ++s) args.push_back(element_of_vars());
  std::vector<Expr> out;
  for (const auto& e : x.D().over<Expr>(algebra, args))
    for (std::size_t k = 0; k < da; ++k) out.push_back(e[k]);
  return {out_sig, x.order(), render_lift(algebra, x.xi()), Program(next, std::move(out))};
}

FunctionalVectorField g_functional(const FunctorTriple& triple, const FunctionalVectorField& x) {
  const auto sig = x.signature();
  if (sig.m != triple.m())
    throw Error(ErrorKind::ArityMismatch, "field base dimension " + std::to_string(sig.m) + " does not match the triple");
  check_projectable(sig.m, x.xi());
  const auto& a = triple.algebra();
  const std::size_t da = a->dim();
  const FunctionalSignature out_sig{sig.m, sig.q1, sig.q2 * da};
  const JetVars v(out_sig, x.order());
  const std::size_t blocks = jet_block_count(sig.q1, x.order());

  std::vector<Element<Expr>> args;
  for (std::size_t i = 0; i < sig.m; ++i) {
    Element<Expr> e(a);
    for (std::size_t k = 0; k < da; ++k) e[k] = Expr(triple.t_generators()[i][k]);
    e[a->unit_index()] = e[a->unit_index()] + v.x(i);
    args.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < sig.q1; ++j) args.push_back(Element<Expr>::constant(a, v.y(j)));
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t s = 0; s < sig.q2; ++s) {
      Element<Expr> e(a);
      for (std::size_t k = 0; k < da; ++k) e[k] = v.z(b, s * da + k);
      args.push_back(std::move(e));
    }
  const auto lifted = x.D().over<Expr>(a, args);

  // Frame motion: jet of xi(x + Y) without its constant term.
  const auto tr = truncated(sig.m, triple.r());
  std::vector<Element<Expr>> targs;
  for (std::size_t i = 0; i < sig.m; ++i) {
    auto e = Element<Expr>::constant(tr, v.x(i));
    e[i + 1] = Expr(1.0);
    targs.push_back(std::move(e));
  }
  const auto xi_jet = x.xi().over<Expr>(tr, targs);
  std::vector<Expr> gdot;
  for (std::size_t i = 0; i < sig.m; ++i)
    for (std::size_t k = 1; k < tr->dim(); ++k) gdot.push_back(xi_jet[i][k]);

  const auto& gens = triple.generators();
  std::vector<Expr> out;
  for (std::size_t s = 0; s < sig.q2; ++s)
    for (std::size_t k = 0; k < da; ++k) {
      Expr val = lifted[s][k];
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Expr row;
        for (std::size_t b = 0; b < da; ++b)
          if (gens[g](k, b) != 0.0) row = row + Expr(gens[g](k, b)) * v.z(0, s * da + b);
        if (!row.is_const(0.0)) val = val + gdot[g] * row;
      }
      out.push_back(val);
    }
  return {out_sig, x.order(), x.xi(), Program(v.arity(), std::move(out))};
}

Program random_fiber_map(std::size_t q1, std::size_t q2, std::size_t degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto mons = monomial_exponents(q1, degree);
  std::vector<Expr> out;
  for (std::size_t s = 0; s < q2; ++s) {
    Expr acc;
    for (const auto& alpha : mons) {
      Expr term(u(rng));
      for (std::size_t j = 0; j < q1; ++j)
        if (alpha[j] > 0) term = term * ipow(Expr::var(j), alpha[j]);
      acc = acc + term;
    }
    out.push_back(acc);
  }
  return Program(q1, std::move(out));
}

FunctionalVectorField random_functional_field(const FunctionalSignature& sig, std::size_t r, std::mt19937_64& rng) {
  RandomProgramOptions xo;
  xo.max_degree = 2;
  xo.terms = 2;
  RandomProgramOptions dopt;
  dopt.max_degree = 2;
  dopt.terms = 3;
  return {sig, r, random_polynomial(sig.m, sig.m, rng, xo), random_polynomial(d_arity(sig, r), sig.q2, rng, dopt)};
}

double field_deviation(const FunctionalVectorField& z1, const FunctionalVectorField& z2, std::span<const double> x,
                       const Program& h, std::span<const double> y) {
  if (!(z1.signature() == z2.signature())) throw Error(ErrorKind::ArityMismatch, "comparing fields of different signatures");
  double dev = max_abs_diff(z1.base(x), z2.base(x));
  const auto jets = jets_of(h, y, std::max(z1.order(), z2.order()));
  dev = std::max(dev, max_abs_diff(z1.vertical_from_jets(x, y, jets), z2.vertical_from_jets(x, y, jets)));
  return dev;
}

namespace {

Report compare_fields(Report report, const FunctionalVectorField& lhs, const FunctionalVectorField& rhs,
                      std::size_t samples, std::uint64_t seed, const std::string& key) {
  const auto sig = lhs.signature();
  const std::size_t degree = 2 * lhs.order() + 1;
  std::vector<double> errors(samples);
  parallel_for(samples, [&](std::size_t s) {
    auto rng = sample_rng(seed, key, s);
    const auto x = uniform_vector(sig.m, rng);
    const auto h = random_fiber_map(sig.q1, sig.q2, degree, rng);
    const auto y = uniform_vector(sig.q1, rng);
    errors[s] = field_deviation(lhs, rhs, x, h, y);
  });
  for (std::size_t s = 0; s < samples; ++s) report.record(s, errors[s]);
  return report;
}

}  // namespace

Report check_prolong_bracket_functional(const AlgebraRef& algebra, const FunctionalVectorField& x1,
                            const FunctionalVectorField& x2, std::size_t samples, std::uint64_t seed, double tol) {
  const auto lhs = functional_field_prolong(algebra, functional_bracket(x1, x2));
  const auto rhs = functional_bracket(functional_field_prolong(algebra, x1), functional_field_prolong(algebra, x2));
  return compare_fields(Report("prolong-functional", algebra->name(), tol), lhs, rhs, samples, seed,
                        "prolong-functional/" + algebra->name());
}

Report check_g_bracket_functional(const FunctorTriple& triple, const FunctionalVectorField& x1,
                            const FunctionalVectorField& x2, std::size_t samples, std::uint64_t seed, double tol) {
  const auto lhs = functional_bracket(g_functional(triple, x1), g_functional(triple, x2));
  const auto rhs = g_functional(triple, functional_bracket(x1, x2));
  Report report("g-functional", triple.algebra()->name(), tol);
  report.extra["triple"] = triple.describe();
  // a user-supplied H is only checked on samples
  report.extra["H_validation"] = triple.kind() == FunctorTriple::ActionKind::custom ? "sampled" : "by construction";
  return compare_fields(std::move(report), lhs, rhs, samples, seed, "g-functional/" + triple.describe());
}

Report check_locality(const OrderRMorphism& d, std::size_t samples, std::uint64_t seed, double tol) {
  d.validate();
  Report report("locality", "-", tol);
  report.extra["order"] = d.r;
  const auto high = monomial_exponents(d.sig.q1, d.r + 1);
  const std::size_t first_top = jet_block_count(d.sig.q1, d.r);
  std::vector<double> errors(samples);
  parallel_for(samples, [&](std::size_t s) {
    auto rng = sample_rng(seed, "locality", s);
    const auto x = uniform_vector(d.sig.m, rng);
    const auto h = random_fiber_map(d.sig.q1, d.sig.q2, d.r + 2, rng);
    const auto v = uniform_vector(d.q.arity_in(), rng);
    const auto y0 = d.q(v);
    std::uniform_int_distribution<std::size_t> pick_alpha(first_top, high.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_s(0, d.sig.q2 - 1);
    const auto& alpha = high[pick_alpha(rng)];
    const std::size_t comp = pick_s(rng);
    Expr bump(uniform_vector(1, rng, 0.5, 2.0)[0]);
    for (std::size_t j = 0; j < d.sig.q1; ++j)
      if (alpha[j] > 0) bump = bump * ipow(Expr::var(j) - Expr(y0[j]), alpha[j]);
    auto outs = h.outputs();
    outs[comp] = outs[comp] + bump;
    const Program h2(d.sig.q1, std::move(outs));
    errors[s] = max_abs_diff(morphism_apply(d, {x, h}, v), morphism_apply(d, {x, h2}, v));
  });
  for (std::size_t s = 0; s < samples; ++s) report.record(s, errors[s]);
  return report;
}

std::vector<std::string> jet_names(const FunctionalSignature& sig, std::size_t r) {
  auto numbered = [](const std::string& stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(n == 1 ? stem : stem + std::to_string(i + 1));
    return out;
  };
  auto names = numbered("x", sig.m);
  for (auto& n : numbered("y", sig.q1)) names.push_back(n);
  for (const auto& alpha : monomial_exponents(sig.q1, r)) {
    std::string stem = "z";
    if (sig.q1 == 1) {
      stem += std::to_string(alpha[0]);
    } else {
      for (int a : alpha) stem += std::to_string(a);
    }
    for (std::size_t s = 0; s < sig.q2; ++s) names.push_back(sig.q2 == 1 ? stem : stem + "_" + std::to_string(s + 1));
  }
  return names;
}

FunctionalVectorField functional_field_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "functional field: expected an object");
  auto count = [&](const char* key, bool allow_zero) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < (allow_zero ? 0 : 1))
      throw Error(ErrorKind::ParseError, std::string("functional field: '") + key + "' must be a " +
                                             (allow_zero ? "non-negative" : "positive") + " integer");
    return j[key].get<std::size_t>();
  };
  const FunctionalSignature sig{count("m", false), count("q1", false), count("q2", false)};
  const std::size_t r = count("r", true);
  for (const char* key : {"xi", "D"})
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("functional field: missing '") + key + "'");
  return {sig, r, program_from_json(j["xi"]), program_from_json(j["D"])};
}

nlohmann::json to_json(const FunctionalVectorField& x) {
  return {{"m", x.m()}, {"q1", x.q1()}, {"q2", x.q2()}, {"r", x.order()}, {"xi", to_json(x.xi())}, {"D", to_json(x.D())}};
}

}  // namespace weilcalc
