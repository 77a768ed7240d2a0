#include "weilcalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "weilcalc/algebra_io.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/functional.hpp"
#include "weilcalc/jet.hpp"
#include "weilcalc/oracles.hpp"
#include "weilcalc/prolongation.hpp"
#include "weilcalc/strong_difference.hpp"
#include "weilcalc/weil_functor.hpp"

namespace weilcalc {

namespace {

using Reports = std::vector<Report>;

double tol_or(const VerifyOptions& o, double fallback) { return o.tol ? *o.tol : fallback; }
std::size_t samples_or(const VerifyOptions& o, std::size_t fallback) { return o.samples ? *o.samples : fallback; }

std::vector<AlgebraRef> algebras_or(const VerifyOptions& o, std::vector<AlgebraRef> fallback) {
  return o.algebras.empty() ? fallback : o.algebras;
}

std::vector<AlgebraRef> manifold_algebras() {
  return {dual(), dual2(), truncated(1, 2), truncated(2, 1), sum(dual(), dual())};
}

std::vector<double> uniform(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

VectorField random_field(std::size_t n, std::mt19937_64& rng) {
  RandomProgramOptions o;
  o.max_degree = 3;
  o.terms = 3;
  return VectorField(random_polynomial(n, n, rng, o));
}

VectorField random_projectable(std::size_t m, std::size_t q, std::mt19937_64& rng) {
  RandomProgramOptions o;
  o.max_degree = 2;
  o.terms = 3;
  const auto base = random_polynomial(m, m, rng, o);
  const auto fiber = random_polynomial(m + q, q, rng, o);
  auto outs = base.outputs();
  for (const auto& e : fiber.outputs()) outs.push_back(e);
  return VectorField(Program(m + q, std::move(outs)));
}

WeilPoint random_point(const AlgebraRef& a, std::size_t n, std::mt19937_64& rng) {
  std::vector<AlgebraElement> coords;
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement e(a);
    const auto v = uniform(a->dim(), rng, -0.5, 0.5);
    for (std::size_t k = 0; k < a->dim(); ++k) e[k] = v[k];
    e[a->unit_index()] = uniform(1, rng)[0];
    coords.push_back(std::move(e));
  }
  return WeilPoint(a, std::move(coords));
}

// Optional fields from the field file.
struct ManifoldPair {
  VectorField x;
  VectorField y;
};

std::optional<ManifoldPair> manifold_pair(const VerifyOptions& o) {
  if (!o.fields || !o.fields->contains("X") || !o.fields->contains("Y") || o.fields->contains("m")) return std::nullopt;
  VectorField x(program_from_json((*o.fields)["X"]));
  VectorField y(program_from_json((*o.fields)["Y"]));
  if (x.dim() != y.dim() || x.components().arity_out() != x.dim() || y.components().arity_out() != y.dim())
    throw Error(ErrorKind::ArityMismatch, "field file: X and Y must be fields on the same R^n");
  return ManifoldPair{std::move(x), std::move(y)};
}

struct ProjectablePair {
  std::size_t m;
  VectorField x;
  VectorField y;
};

std::optional<ProjectablePair> projectable_pair(const VerifyOptions& o) {
  if (!o.fields || !o.fields->contains("m")) return std::nullopt;
  const auto& f = *o.fields;
  if (!f["m"].is_number_integer() || f["m"].get<long long>() < 1)
    throw Error(ErrorKind::ParseError, "field file: 'm' must be a positive integer");
  if (!f.contains("X") || !f.contains("Y")) throw Error(ErrorKind::ParseError, "field file: missing 'X' or 'Y'");
  ProjectablePair p{f["m"].get<std::size_t>(), VectorField(program_from_json(f["X"])),
                    VectorField(program_from_json(f["Y"]))};
  if (p.x.dim() != p.y.dim() || p.x.dim() <= p.m) throw Error(ErrorKind::ArityMismatch, "field file: bad fibered pair");
  check_projectable(p.m, p.x.components());
  check_projectable(p.m, p.y.components());
  return p;
}

std::optional<std::pair<FunctionalVectorField, FunctionalVectorField>> functional_pair(const VerifyOptions& o) {
  if (!o.fields || !o.fields->contains("X1")) return std::nullopt;
  if (!o.fields->contains("X2")) throw Error(ErrorKind::ParseError, "field file: 'X1' without 'X2'");
  auto a = functional_field_from_json((*o.fields)["X1"]);
  auto b = functional_field_from_json((*o.fields)["X2"]);
  if (!(a.signature() == b.signature())) throw Error(ErrorKind::ArityMismatch, "field file: signatures differ");
  return std::make_pair(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------

Reports suite_sigma(const VerifyOptions& o) {
  const auto& sb = make_S();
  const auto d = dual();
  Report r("sigma", sb.algebra->name(), tol_or(o, 0.0));
  // sigma on the basis {1, e1+E2, e2+E1, e1e2, E1E2}.
  const double expected[5][2] = {{1, 0}, {0, 0}, {0, 0}, {0, 1}, {0, -1}};
  for (std::size_t k = 0; k < 5; ++k) {
    const auto img = sb.sigma(AlgebraElement::basis(sb.algebra, k));
    r.record(k, std::max(std::abs(img[0] - expected[k][0]), std::abs(img[1] - expected[k][1])),
             "sigma(" + sb.algebra->basis()[k] + ")");
  }
  // Homomorphism laws on all basis pairs, for sigma and the inclusion.
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const auto bi = AlgebraElement::basis(sb.algebra, i);
      const auto bj = AlgebraElement::basis(sb.algebra, j);
      const double es = max_abs_diff(sb.sigma(bi * bj), sb.sigma(bi) * sb.sigma(bj));
      const double ei = max_abs_diff(sb.inclusion(bi * bj), sb.inclusion(bi) * sb.inclusion(bj));
      r.record(5 + 5 * i + j, std::max(es, ei), "basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  const auto hc = check_hom(*sb.algebra, *d, sb.sigma.matrix());
  r.record(30, std::max(hc.unit_error, hc.product_error), "unit and product laws");
  // sigma(2, 1, 3, 5, 4) = 2 + e
  const AlgebraElement a(sb.algebra, {2, 1, 3, 5, 4});
  r.record(31, max_abs_diff(sb.sigma(a), AlgebraElement(d, {2, 1})), "sigma(2,1,3,5,4) = 2+e");
  r.extra["sigma_matrix"] = {{sb.sigma.matrix()(0, 0), sb.sigma.matrix()(0, 1), sb.sigma.matrix()(0, 2),
                              sb.sigma.matrix()(0, 3), sb.sigma.matrix()(0, 4)},
                             {sb.sigma.matrix()(1, 0), sb.sigma.matrix()(1, 1), sb.sigma.matrix()(1, 2),
                              sb.sigma.matrix()(1, 3), sb.sigma.matrix()(1, 4)}};
  return {r};
}

Reports suite_bracket(const VerifyOptions& o) {
  const std::size_t pairs = 20;
  const std::size_t points = samples_or(o, 20);
  Report r("bracket", "dual(x)dual", tol_or(o, 1e-6));
  r.extra["convention"] = "[X,Y] = DY.X - DX.Y = w(TY o X) - w(TX o Y), e1 the outer direction";
  std::vector<std::pair<VectorField, VectorField>> fields;
  for (std::size_t p = 0; p < pairs; ++p) {
    auto rng = sample_rng(o.seed, "bracket/pair", p);
    const std::size_t n = 1 + p % 3;
    auto x = random_field(n, rng);
    auto y = random_field(n, rng);
    fields.emplace_back(std::move(x), std::move(y));
  }
  if (auto mp = manifold_pair(o)) fields.emplace_back(mp->x, mp->y);
  std::vector<double> errors(fields.size() * points);
  parallel_for(fields.size(), [&](std::size_t p) {
    const auto& [x, y] = fields[p];
    const auto b = bracket(x, y);
    for (std::size_t s = 0; s < points; ++s) {
      auto rng = sample_rng(o.seed, "bracket/point/" + std::to_string(p), s);
      const auto at = uniform(x.dim(), rng);
      const auto ref = jacobian_bracket_oracle(x, y, at);
      errors[p * points + s] = std::max(max_abs_diff(b(at), ref), max_abs_diff(bracket_at(x, y, at), ref));
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) r.record(i, errors[i]);
  return {r};
}

Reports suite_prolong(const VerifyOptions& o) {
  Reports out;
  const std::size_t points = samples_or(o, 50);
  const double tol = tol_or(o, 1e-7);
  const auto mp = manifold_pair(o);
  for (const auto& a : algebras_or(o, manifold_algebras())) {
    Report r("prolong", a->name(), tol);
    for (std::size_t p = 0; p < 10; ++p) {
      auto rng = sample_rng(o.seed, "prolong/pair", p);
      const std::size_t n = 1 + p % 2;
      const auto x = random_field(n, rng);
      const auto y = random_field(n, rng);
      r.absorb(check_prolong_bracket(a, x, y, points, sample_seed(o.seed, "prolong/points", p), tol));
    }
    if (mp) r.absorb(check_prolong_bracket(a, mp->x, mp->y, points, o.seed, tol));
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_exchange_square(const VerifyOptions& o) {
  Reports out;
  const std::size_t pairs = samples_or(o, 100);
  for (const auto& a : algebras_or(o, manifold_algebras())) {
    Report r("exchange-square", a->name(), tol_or(o, 1e-12));
    std::vector<double> errors(pairs);
    std::vector<char> member(pairs);
    parallel_for(pairs, [&](std::size_t s) {
      auto rng = sample_rng(o.seed, "exchange-square/" + a->name(), s);
      const auto pair = random_compatible_pair(a, 1 + s % 2, rng);
      errors[s] = exchange_square(a, pair).deviation;
      const auto k = K_map(a, pair);
      member[s] = compatible_over(a, pair, 0.0) && compatible(k.x, k.y, 0.0);
    });
    std::size_t outside = 0;
    for (std::size_t s = 0; s < pairs; ++s) {
      if (!member[s]) {
        ++outside;
        r.fail(s, "K^A image is not a compatible pair");
      } else {
        r.record(s, errors[s]);
      }
    }
    r.extra["membership_failures"] = outside;
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_exchange_lemma(const VerifyOptions& o) {
  const std::vector<AlgebraRef> choices = algebras_or(o, {dual(), truncated(1, 2)});
  Report r("exchange-lemma", "-", tol_or(o, 0.0));
  nlohmann::json cases = nlohmann::json::array();
  std::size_t idx = 0;
  for (const auto& a : choices)
    for (const auto& b : choices)
      for (const auto& c : choices) {
        const auto lc = check_lemma(a, b, c);
        const std::string name = "(" + a->name() + ", " + b->name() + ", " + c->name() + ")";
        r.record(idx++, lc.worst(), name);
        cases.push_back({{"algebras", name},
                         {"square", lc.square},
                         {"square_dd", lc.square_dd},
                         {"naturality", lc.naturality},
                         {"standard", lc.standard},
                         {"tangent_square", lc.tangent_square}});
      }
  r.extra["cases"] = std::move(cases);
  return {r};
}

Reports suite_iterated(const VerifyOptions& o) {
  const auto choices = algebras_or(o, {dual(), truncated(1, 2), truncated(2, 1)});
  const std::size_t programs = samples_or(o, 20);
  Report r("iterated", "-", tol_or(o, 1e-10));
  std::vector<double> errors(programs);
  std::vector<std::string> names(programs);
  parallel_for(programs, [&](std::size_t s) {
    auto rng = sample_rng(o.seed, "iterated", s);
    const auto& a = choices[s % choices.size()];
    const auto& b = choices[(s / choices.size()) % choices.size()];
    RandomProgramOptions opts;
    opts.transcendental = true;
    const std::size_t n = 1 + s % 2;
    const std::size_t p = 1 + (s / 2) % 2;
    const auto f = random_polynomial(n, p, rng, opts);
    const auto ba = tensor(b, a);
    const auto pt = random_point(ba, n, rng);
    // T^B (T^A f) on the unflattened point, then flatten.
    const auto it = unflatten(b, a, pt);
    const auto outer = lift(b, render_lift(a, f))(it.point);
    const auto path1 = flatten(IteratedPoint{b, a, outer});
    const auto path2 = lift(ba, f)(pt);
    errors[s] = max_abs_diff(path1, path2);
    names[s] = "B = " + b->name() + ", A = " + a->name();
  });
  for (std::size_t s = 0; s < programs; ++s) r.record(s, errors[s], names[s]);
  return {r};
}

Reports suite_functor_laws(const VerifyOptions& o) {
  Reports out;
  const std::size_t samples = samples_or(o, 20);
  for (const auto& a : algebras_or(o, {dual(), truncated(1, 2), dual2(), sum(dual(), dual())})) {
    Report r("functor-laws", a->name(), tol_or(o, 1e-10));
    std::vector<double> errors(samples);
    parallel_for(samples, [&](std::size_t s) {
      auto rng = sample_rng(o.seed, "functor-laws/" + a->name(), s);
      RandomProgramOptions opts;
      opts.transcendental = true;
      opts.coeff_range = 0.5;
      const std::size_t n = 1 + s % 3;
      const std::size_t k = 1 + (s + 1) % 2;
      const auto f = random_polynomial(n, k, rng, opts);
      const auto g = random_polynomial(k, 2, rng, opts);
      const auto pt = random_point(a, n, rng);
      double err = max_abs_diff(lift(a, compose(g, f))(pt), lift(a, g)(lift(a, f)(pt)));
      err = std::max(err, max_abs_diff(lift(a, Program::identity(n))(pt), pt));
      // Naturality in the algebra: real part and unit inclusion.
      const auto rho = real_part(a);
      err = std::max(err, max_abs_diff(transform(rho, lift(a, f)(pt)), lift(reals(), f)(transform(rho, pt))));
      const auto iota = unit_inclusion(a);
      const auto base = WeilPoint::real(reals(), pt.base());
      err = std::max(err, max_abs_diff(transform(iota, lift(reals(), f)(base)), lift(a, f)(transform(iota, base))));
      if (a->dim() > 1) {
        const auto kappa = weilcalc::exchange(a, dual());
        const auto ad = tensor(a, dual());
        const auto q = random_point(ad, n, rng);
        err = std::max(err, max_abs_diff(transform(kappa, lift(ad, f)(q)), lift(kappa.target(), f)(transform(kappa, q))));
      }
      errors[s] = err;
    });
    for (std::size_t s = 0; s < samples; ++s) r.record(s, errors[s]);
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_jet_group(const VerifyOptions& o) {
  Reports out;
  const std::size_t samples = samples_or(o, 200);
  for (auto [m, rr] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 1}, {2, 2}}) {
    const std::string name = truncated(m, rr)->name();
    Report axioms("jet-group", name, tol_or(o, 1e-12));
    Report action("jet-action", name, tol_or(o, 1e-10));
    std::vector<double> e_ax(samples);
    std::vector<double> e_act(samples);
    parallel_for(samples, [&, m = m, rr = rr](std::size_t s) {
      auto rng = sample_rng(o.seed, "jet-group/" + name, s);
      const auto g1 = JetGroupElement::random(m, rr, rng);
      const auto g2 = JetGroupElement::random(m, rr, rng);
      const auto g3 = JetGroupElement::random(m, rr, rng);
      const auto id = JetGroupElement::identity(m, rr);
      double e = max_abs_diff(jet_compose(jet_compose(g1, g2), g3), jet_compose(g1, jet_compose(g2, g3)));
      e = std::max(e, max_abs_diff(jet_compose(g1, id), g1));
      e = std::max(e, max_abs_diff(jet_compose(id, g1), g1));
      const auto inv = jet_invert(g1);
      e = std::max(e, max_abs_diff(jet_compose(g1, inv), id));
      e = std::max(e, max_abs_diff(jet_compose(inv, g1), id));
      e_ax[s] = e;
      const auto h12 = canonical_action(m, rr, jet_compose(g1, g2));
      const auto h1h2 = canonical_action(m, rr, g1).matrix() * canonical_action(m, rr, g2).matrix();
      e_act[s] = std::max(max_abs_diff(h12.matrix(), h1h2),
                          max_abs_diff(canonical_action(m, rr, id).matrix(), Matrix::identity(h12.matrix().rows())));
    });
    for (std::size_t s = 0; s < samples; ++s) {
      axioms.record(s, e_ax[s]);
      action.record(s, e_act[s]);
    }
    out.push_back(std::move(axioms));
    out.push_back(std::move(action));
  }
  return out;
}

Reports suite_frame_prolong(const VerifyOptions& o) {
  Reports out;
  const std::size_t samples = samples_or(o, 20);
  for (auto [m, rr] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 1}}) {
    const std::string name = truncated(m, rr)->name();
    Report r("frame-prolong", name, tol_or(o, 1e-5));
    r.extra["oracle"] = "RK4 flow in the algebra, step 1e-3, central difference 1e-4";
    std::vector<double> errors(samples);
    parallel_for(samples, [&, m = m, rr = rr](std::size_t s) {
      auto rng = sample_rng(o.seed, "frame-prolong/" + name, s);
      RandomProgramOptions opts;
      opts.transcendental = true;
      opts.coeff_range = 0.5;
      const auto xi = random_polynomial(m, m, rng, opts);
      const auto x = uniform(m, rng);
      const auto g = JetGroupElement::random(m, rr, rng);
      const auto got = frame_prolong(xi, rr, x, g);
      const auto ref = oracle::frame_flow(xi, rr, x, g);
      double e = std::max(max_abs_diff(got.x, ref.x), max_abs_diff(got.g, ref.g));
      std::vector<double> state = x;
      state.insert(state.end(), g.coeffs().begin(), g.coeffs().end());
      const auto field = frame_prolong_field(xi, rr)(state);
      std::vector<double> flat = got.x;
      flat.insert(flat.end(), got.g.begin(), got.g.end());
      errors[s] = std::max(e, max_abs_diff(field, flat));
    });
    for (std::size_t s = 0; s < samples; ++s) r.record(s, errors[s]);
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_g(const VerifyOptions& o) {
  Reports out;
  const std::size_t samples = samples_or(o, 20);
  const double tol = tol_or(o, 1e-6);
  std::vector<FunctorTriple> triples{jr_triple(1, 1), jr_triple(1, 2), jr_triple(2, 1), trivial_triple(dual(), 1, 1)};
  const auto pp = projectable_pair(o);
  for (const auto& t : triples) {
    Report r("g-bracket", t.algebra()->name(), tol);
    r.extra["triple"] = t.describe();
    for (std::size_t p = 0; p < 5; ++p) {
      auto rng = sample_rng(o.seed, "g-bracket/pair/" + t.describe(), p);
      const auto x = random_projectable(t.m(), 1, rng);
      const auto y = random_projectable(t.m(), 1, rng);
      r.absorb(check_g_bracket(t, x, y, samples, sample_seed(o.seed, "g-bracket/points", p), tol));
    }
    if (pp && pp->m == t.m()) r.absorb(check_g_bracket(t, pp->x, pp->y, samples, o.seed, tol));
    out.push_back(std::move(r));
  }
  // Vertical fields on R x R under J^1: the classical first prolongation.
  const auto j11 = jr_triple(1, 1);
  Report c("jet-classical", j11.algebra()->name(), tol_or(o, 1e-8));
  c.extra["formula"] = "phi d/du + (phi_x + u1 phi_u) d/du1";
  std::vector<double> errors(samples);
  parallel_for(samples, [&](std::size_t s) {
    auto rng = sample_rng(o.seed, "jet-classical", s);
    RandomProgramOptions opts;
    opts.transcendental = true;
    opts.coeff_range = 0.5;
    const auto phi = random_polynomial(2, 1, rng, opts);
    const Program field(2, {Expr(0.0), phi.output(0)});
    const auto g = g_field_prolong(j11, VectorField(field));
    const auto pt = uniform(3, rng);  // x, u, u1
    const auto got = g(pt);
    const auto ref = oracle::classical_prolongation(phi, pt[0], pt[1], pt[2]);
    errors[s] = std::max({std::abs(got[0]), std::abs(got[1] - ref[0]), std::abs(got[2] - ref[1])});
  });
  for (std::size_t s = 0; s < samples; ++s) c.record(s, errors[s]);
  out.push_back(std::move(c));
  return out;
}

FunctionalVectorField example_x1() {
  // D1 = y z0
  return {FunctionalSignature{1, 1, 1}, 0, Program(1, {Expr(0.0)}), Program(3, {Expr::var(1) * Expr::var(2)})};
}

FunctionalVectorField example_x2() {
  // D2 = z1
  return {FunctionalSignature{1, 1, 1}, 1, Program(1, {Expr(0.0)}), Program(4, {Expr::var(3)})};
}

std::vector<std::pair<FunctionalVectorField, FunctionalVectorField>> functional_pairs(const VerifyOptions& o,
                                                                                      std::size_t m,
                                                                                      const std::string& key) {
  std::vector<std::pair<FunctionalVectorField, FunctionalVectorField>> pairs;
  if (m == 1) pairs.emplace_back(example_x1(), example_x2());
  for (std::size_t p = 0; p < 4; ++p) {
    auto rng = sample_rng(o.seed, key, p);
    const FunctionalSignature sig{m, 1 + p % 2, 1};
    auto a = random_functional_field(sig, 1, rng);
    auto b = random_functional_field(sig, p % 2, rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  if (auto fp = functional_pair(o); fp && fp->first.m() == m) pairs.push_back(*fp);
  return pairs;
}

Reports suite_prolong_functional(const VerifyOptions& o) {
  Reports out;
  const std::size_t samples = samples_or(o, 30);
  const double tol = tol_or(o, 1e-6);
  for (const auto& a : algebras_or(o, {dual(), truncated(1, 2)})) {
    Report r("prolong-functional", a->name(), tol);
    const auto pairs = functional_pairs(o, 1, "prolong-functional/pair");
    for (std::size_t p = 0; p < pairs.size(); ++p)
      r.absorb(check_prolong_bracket_functional(a, pairs[p].first, pairs[p].second, samples,
                                    sample_seed(o.seed, "prolong-functional/points", p), tol));
    // A = reals: the prolongation is the identity.
    const auto& [x1, x2] = pairs.front();
    const auto plain = functional_field_prolong(reals(), x1);
    auto rng = sample_rng(o.seed, "prolong-functional/reals", 0);
    const auto h = random_fiber_map(x1.q1(), x1.q2(), 3, rng);
    const auto x = uniform(x1.m(), rng);
    const auto y = uniform(x1.q1(), rng);
    r.record(r.samples, field_deviation(plain, x1, x, h, y), "prolongation over reals");
    // Example pair: the bracket's fiber part is h itself.
    const auto b = functional_bracket(example_x1(), example_x2());
    const std::vector<double> x0{0.25};
    const auto h1 = random_fiber_map(1, 1, 4, rng);
    for (double yy : {-0.7, 0.1, 0.9}) {
      const std::vector<double> yv{yy};
      r.record(r.samples, std::abs(b.vertical(x0, h1, yv)[0] - h1(yv)[0]), "[y z0, z1] = z0");
    }
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_g_functional(const VerifyOptions& o) {
  Reports out;
  const std::size_t samples = samples_or(o, 30);
  const double tol = tol_or(o, 1e-6);
  std::vector<FunctorTriple> triples{jr_triple(1, 1), jr_triple(1, 2), jr_triple(2, 1), trivial_triple(dual(), 1, 1)};
  for (const auto& t : triples) {
    Report r("g-functional", t.algebra()->name(), tol);
    r.extra["triple"] = t.describe();
    const auto pairs = functional_pairs(o, t.m(), "g-functional/pair/" + t.describe());
    for (std::size_t p = 0; p < pairs.size(); ++p)
      r.absorb(check_g_bracket_functional(t, pairs[p].first, pairs[p].second, samples,
                                    sample_seed(o.seed, "g-functional/points", p), tol));
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_fd_reduction(const VerifyOptions& o) {
  constexpr std::size_t degree = 4;
  const std::size_t pairs = 10;
  const std::size_t states = samples_or(o, 5);
  Report r("fd-reduction", "-", tol_or(o, 1e-7));
  r.extra["family"] = "h(y) = c0 + ... + c4 y^4; D = p0(x) + p1(x) z0 + p2(x) y z1 + p3(x) z1";
  std::vector<double> errors(pairs * states);
  parallel_for(pairs, [&](std::size_t p) {
    auto rng = sample_rng(o.seed, "fd-reduction/pair", p);
    RandomProgramOptions opts;
    opts.max_degree = 2;
    opts.terms = 2;
    auto make = [&] {
      oracle::PolyFamilyField f;
      f.xi = random_polynomial(1, 1, rng, opts);
      for (auto& q : f.p) q = random_polynomial(1, 1, rng, opts);
      return f;
    };
    const auto a = make();
    const auto b = make();
    const auto bracket_field = functional_bracket(oracle::to_functional(a), oracle::to_functional(b));
    for (std::size_t s = 0; s < states; ++s) {
      auto srng = sample_rng(o.seed, "fd-reduction/state/" + std::to_string(p), s);
      const auto state = uniform(degree + 2, srng);
      Expr h;
      for (std::size_t k = 0; k <= degree; ++k) h = h + Expr(state[k + 1]) * ipow(Expr::var(0), static_cast<int>(k));
      const Program hp(1, {h});
      const std::vector<double> x{state[0]};
      std::vector<double> got = bracket_field.base(x);
      const auto coeffs = oracle::vandermonde_coefficients(
          [&](double y) { return bracket_field.vertical(x, hp, std::vector<double>{y})[0]; }, degree);
      got.insert(got.end(), coeffs.begin(), coeffs.end());
      errors[p * states + s] = max_abs_diff(got, oracle::coefficient_bracket(a, b, degree, state));
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) r.record(i, errors[i]);
  return {r};
}

Reports suite_locality(const VerifyOptions& o) {
  Report r("locality", "-", tol_or(o, 1e-10));
  r.extra["order"] = {0, 1, 2};
  const std::size_t samples = samples_or(o, 20);
  std::size_t idx = 0;
  for (std::size_t order = 0; order <= 2; ++order)
    for (std::size_t q1 = 1; q1 <= 2; ++q1) {
      auto rng = sample_rng(o.seed, "locality/morphism", idx++);
      OrderRMorphism d;
      d.r = order;
      d.sig = {1, q1, 1 + order % 2};
      d.base = Program::identity(1);
      RandomProgramOptions opts;
      opts.max_degree = 2;
      opts.terms = 4;
      d.q = random_polynomial(2, q1, rng, opts);
      d.fc = random_polynomial(1 + q1 + jet_block_count(q1, order) * d.sig.q2 + 2, 1, rng, opts);
      auto sub = check_locality(d, samples, sample_seed(o.seed, "locality/points", idx), r.tolerance);
      sub.algebra = "r=" + std::to_string(order) + ",q1=" + std::to_string(q1);
      r.absorb(sub);
    }
  return {r};
}

using SuiteFn = Reports (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t{
      {"sigma", suite_sigma},
      {"bracket", suite_bracket},
      {"prolong", suite_prolong},
      {"exchange-square", suite_exchange_square},
      {"exchange-lemma", suite_exchange_lemma},
      {"iterated", suite_iterated},
      {"functor-laws", suite_functor_laws},
      {"jet-group", suite_jet_group},
      {"frame-prolong", suite_frame_prolong},
      {"g-bracket", suite_g},
      {"prolong-functional", suite_prolong_functional},
      {"g-functional", suite_g_functional},
      {"fd-reduction", suite_fd_reduction},
      {"locality", suite_locality},
  };
  return t;
}

bool is_input_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::ArityMismatch || k == ErrorKind::ShapeMismatch ||
         k == ErrorKind::AlgebraMismatch || k == ErrorKind::InvalidAlgebra || k == ErrorKind::NonProjectable;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : table()) n.push_back(name);
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

std::vector<Report> run_suite(const std::string& name, const VerifyOptions& options) {
  if (!is_suite(name)) throw Error(ErrorKind::ParseError, "unknown suite '" + name + "'");
  if (const auto& f = options.fields) {
    const bool pair = f->is_object() && ((f->contains("X") && f->contains("Y")) || f->contains("X1"));
    if (!pair) throw Error(ErrorKind::ParseError, "field file: expected keys X and Y (optionally m), or X1 and X2");
  }
  std::vector<Report> out;
  for (const auto& [n, fn] : table()) {
    if (name != "all" && name != n) continue;
    try {
      auto reports = fn(options);
      for (auto& r : reports) out.push_back(std::move(r));
    } catch (const Error& e) {
      if (is_input_error(e.kind())) throw;
      Report r(n, "-", options.tol.value_or(0.0));
      r.fail(0, e.what());
      out.push_back(std::move(r));
    }
  }
  return out;
}

nlohmann::json run_document(const std::string& suite, const VerifyOptions& options, const std::vector<Report>& reports) {
  nlohmann::json doc;
  doc["format"] = "weilcalc-report/1";
  doc["suite"] = suite;
  // pinned once against the Jacobian oracle; every bracket in the engine uses it
  doc["bracket_convention"] = "[X, Y] = (TY o X) - (TX o Y) through sigma = DY.X - DX.Y";
  doc["seed"] = options.seed;
  doc["tolerance_override"] = options.tol ? nlohmann::json(*options.tol) : nullptr;
  doc["samples_override"] = options.samples ? nlohmann::json(*options.samples) : nullptr;
  nlohmann::json algs = nlohmann::json::array();
  for (const auto& a : options.algebras) algs.push_back(a->name());
  doc["algebras"] = std::move(algs);
  nlohmann::json list = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : reports) {
    list.push_back(r.to_json());
    ok = ok && r.passed();
  }
  doc["reports"] = std::move(list);
  doc["status"] = ok ? "pass" : "fail";
  return doc;
}

}  // namespace weilcalc
