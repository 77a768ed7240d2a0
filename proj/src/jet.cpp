#include "weilcalc/jet.hpp"

#include <cmath>
#include <sstream>

#include "weilcalc/algebra_io.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/strong_difference.hpp"

namespace weilcalc {

namespace {

constexpr double kSingular = 1e-12;
constexpr double kTripleTol = 1e-10;

std::size_t monomial_count(std::size_t m, std::size_t r) { return binomial(m + r, r) - 1; }

}  // namespace

JetGroupElement::JetGroupElement(std::size_t m, std::size_t r, std::vector<double> coeffs)
    : m_(m), r_(r), coeffs_(std::move(coeffs)) {
  if (m == 0 || r == 0) throw Error(ErrorKind::ShapeMismatch, "jet group needs m >= 1 and r >= 1");
  if (coeffs_.size() != m * monomial_count(m, r))
    throw Error(ErrorKind::ShapeMismatch, "jet of order " + std::to_string(r) + " on R^" + std::to_string(m) +
                                              " needs " + std::to_string(m * monomial_count(m, r)) + " coefficients");
  const double det = determinant(linear_part());
  if (!(std::abs(det) >= kSingular))
    throw Error(ErrorKind::SingularLinearPart, "linear part has determinant " + std::to_string(det));
}

JetGroupElement JetGroupElement::identity(std::size_t m, std::size_t r) {
  const std::size_t n = monomial_count(m, r);
  std::vector<double> c(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) c[i * n + i] = 1.0;  // y_i is monomial i + 1
  return JetGroupElement(m, r, std::move(c));
}

JetGroupElement JetGroupElement::random(std::size_t m, std::size_t r, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const std::size_t n = monomial_count(m, r);
  std::vector<double> c(m * n);
  for (auto& v : c) v = u(rng);
  // Keep the linear part well away from singular.
  for (std::size_t i = 0; i < m; ++i) c[i * n + i] += i % 2 == 0 ? 1.5 : -1.5;
  return JetGroupElement(m, r, std::move(c));
}

Matrix JetGroupElement::linear_part() const {
  Matrix l(m_, m_);
  const std::size_t n = monomials();
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) l(i, j) = coeffs_[i * n + j];
  return l;
}

std::vector<AlgebraElement> JetGroupElement::components() const {
  const auto alg = truncated(m_, r_);
  const std::size_t n = monomials();
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < m_; ++i) {
    AlgebraElement e(alg);
    for (std::size_t k = 0; k < n; ++k) e[k + 1] = coeffs_[i * n + k];
    out.push_back(std::move(e));
  }
  return out;
}

double max_abs_diff(const JetGroupElement& a, const JetGroupElement& b) {
  if (a.m() != b.m() || a.r() != b.r()) throw Error(ErrorKind::ShapeMismatch, "jets of different (m, r)");
  return max_abs_diff(std::span<const double>(a.coeffs()), std::span<const double>(b.coeffs()));
}

std::vector<double> jet_coefficients(const std::vector<AlgebraElement>& components) {
  std::vector<double> out;
  for (const auto& c : components)
    for (std::size_t k = 1; k < c.size(); ++k) out.push_back(c[k]);
  return out;
}

JetGroupElement jet_compose(const JetGroupElement& a, const JetGroupElement& b) {
  if (a.m() != b.m() || a.r() != b.r()) throw Error(ErrorKind::ShapeMismatch, "composing jets of different (m, r)");
  const auto alg = truncated(a.m(), a.r());
  return JetGroupElement(a.m(), a.r(), jet_coefficients(a.apply(alg, b.components())));
}

JetGroupElement jet_invert(const JetGroupElement& a) {
  const std::size_t m = a.m();
  const auto alg = truncated(m, a.r());
  const auto linv = inverse(a.linear_part(), kSingular);
  if (!linv) throw Error(ErrorKind::SingularLinearPart, "cannot invert a jet with singular linear part");
  std::vector<AlgebraElement> y;
  for (std::size_t i = 0; i < m; ++i) y.push_back(AlgebraElement::basis(alg, i + 1));
  auto apply_linv = [&](const std::vector<AlgebraElement>& v) {
    std::vector<AlgebraElement> out;
    for (std::size_t i = 0; i < m; ++i) {
      AlgebraElement acc(alg);
      for (std::size_t j = 0; j < m; ++j) acc += v[j] * (*linv)(i, j);
      out.push_back(std::move(acc));
    }
    return out;
  };
  const Matrix l = a.linear_part();
  // b = L^{-1}(y - N(b)), N the part of degree >= 2; each pass fixes one more degree.
  auto b = apply_linv(y);
  for (std::size_t pass = 1; pass < a.r(); ++pass) {
    const auto ab = a.apply(alg, b);
    std::vector<AlgebraElement> rhs;
    for (std::size_t i = 0; i < m; ++i) {
      AlgebraElement lin(alg);
      for (std::size_t j = 0; j < m; ++j) lin += b[j] * l(i, j);
      rhs.push_back(y[i] - (ab[i] - lin));
    }
    b = apply_linv(rhs);
  }
  return JetGroupElement(m, a.r(), jet_coefficients(b));
}

AlgebraHom canonical_action(std::size_t m, std::size_t r, const JetGroupElement& g) {
  if (g.m() != m || g.r() != r) throw Error(ErrorKind::ShapeMismatch, "jet does not match the action's (m, r)");
  const auto alg = truncated(m, r);
  const auto comps = jet_invert(g).components();
  const auto mons = monomial_exponents(m, r);
  Matrix mat(alg->dim(), alg->dim());
  for (std::size_t a = 0; a < mons.size(); ++a) {
    auto p = AlgebraElement::constant(alg, 1.0);
    for (std::size_t v = 0; v < m; ++v)
      for (int e = 0; e < mons[a][v]; ++e) p = p * comps[v];
    for (std::size_t k = 0; k < alg->dim(); ++k) mat(k, a) = p[k];
  }
  return AlgebraHom::create(alg, alg, std::move(mat));
}

FunctorTriple::FunctorTriple(AlgebraRef a, std::size_t m, std::size_t r, GroupAction h, AlgebraHom t,
                             ActionKind kind)
    : algebra_(std::move(a)), m_(m), r_(r), h_(std::move(h)), t_(std::move(t)), kind_(kind) {}

std::string FunctorTriple::describe() const {
  const char* k = kind_ == ActionKind::canonical ? "canonical" : kind_ == ActionKind::trivial ? "trivial" : "custom";
  return "(" + algebra_->name() + ", " + k + " H, m=" + std::to_string(m_) + ", r=" + std::to_string(r_) + ")";
}

FunctorTriple FunctorTriple::make(AlgebraRef algebra, std::size_t m, std::size_t r, GroupAction h, AlgebraHom t,
                                  ActionKind kind, std::size_t samples, std::uint64_t seed) {
  const auto base = truncated(m, r);
  if (!same_algebra(t.source(), base) || !same_algebra(t.target(), algebra))
    throw Error(ErrorKind::AlgebraMismatch, "t must map " + base->name() + " to " + algebra->name());
  FunctorTriple out(algebra, m, r, std::move(h), std::move(t), kind);
  const std::size_t d = algebra->dim();

  auto check = [&](const AlgebraHom& hg) {
    if (!same_algebra(hg.source(), algebra) || !same_algebra(hg.target(), algebra))
      throw Error(ErrorKind::InvariantViolation, "H(g) is not an endomorphism of " + algebra->name());
  };
  const auto h_id = out.H(JetGroupElement::identity(m, r));
  check(h_id);
  if (max_abs_diff(h_id.matrix(), Matrix::identity(d)) > kTripleTol)
    throw Error(ErrorKind::InvariantViolation, "H(id) is not the identity");

  double worst = 0.0;
  std::size_t worst_sample = 0;
  std::string worst_what;
  auto note = [&](double err, std::size_t s, const char* what) {
    if (err > worst) {
      worst = err;
      worst_sample = s;
      worst_what = what;
    }
  };
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = sample_rng(seed, "triple", s);
    const auto g1 = JetGroupElement::random(m, r, rng);
    const auto g2 = JetGroupElement::random(m, r, rng);
    const auto h1 = out.H(g1);
    const auto h2 = out.H(g2);
    check(h1);
    const auto h12 = out.H(jet_compose(g1, g2));
    note(max_abs_diff(h12.matrix(), h1.matrix() * h2.matrix()), s, "H(g1 g2) != H(g1) H(g2)");
    if (std::abs(determinant(h1.matrix())) < kSingular) note(INFINITY, s, "H(g) is singular");
    const auto h0 = canonical_action(m, r, g1);
    note(max_abs_diff(out.t_.matrix() * h0.matrix(), h1.matrix() * out.t_.matrix()), s, "t is not equivariant");
  }
  if (worst > kTripleTol) {
    std::ostringstream os;
    os << worst_what << " at sample " << worst_sample << ", deviation " << worst;
    throw Error(ErrorKind::InvariantViolation, os.str());
  }

  // Generators of the action and t(y_i).
  const std::size_t nmon = monomial_count(m, r);
  const auto mons = monomial_exponents(m, r);
  for (std::size_t i = 0; i < m; ++i) out.t_gens_.push_back(out.t_(AlgebraElement::basis(base, i + 1)));
  for (std::size_t comp = 0; comp < m; ++comp)
    for (std::size_t mon = 1; mon <= nmon; ++mon) {
      Matrix gen(d, d);
      if (kind == ActionKind::canonical) {
        // d/de of phi o (id - e E)(y), with E = y^mon in component comp, in truncated(m, r) (x) D.
        const auto td = tensor(base, dual());
        const std::size_t dt = base->dim();
        const auto eps = AlgebraElement::basis(td, dt);
        AlgebraElement y_mon(td);
        y_mon[mon] = 1.0;
        std::vector<AlgebraElement> y;
        for (std::size_t v = 0; v < m; ++v) {
          auto yv = AlgebraElement::basis(td, v + 1);
          if (v == comp) yv -= eps * y_mon;
          y.push_back(std::move(yv));
        }
        for (std::size_t a = 0; a < mons.size(); ++a) {
          auto p = AlgebraElement::constant(td, 1.0);
          for (std::size_t v = 0; v < m; ++v)
            for (int e = 0; e < mons[a][v]; ++e) p = p * y[v];
          for (std::size_t k = 0; k < dt; ++k) gen(k, a) = p[k + dt];
        }
      } else if (kind == ActionKind::custom) {
        const double step = 1e-6;
        auto shifted = [&](double s) {
          auto c = JetGroupElement::identity(m, r).coeffs();
          c[comp * nmon + mon - 1] += s;
          return out.H(JetGroupElement(m, r, c)).matrix();
        };
        const auto plus = shifted(step);
        const auto minus = shifted(-step);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) gen(a, b) = (plus(a, b) - minus(a, b)) / (2.0 * step);
      }
      out.generators_.push_back(std::move(gen));
    }
  return out;
}

FunctorTriple jr_triple(std::size_t m, std::size_t r) {
  const auto a = truncated(m, r);
  return FunctorTriple::make(
      a, m, r, [m, r](const JetGroupElement& g) { return canonical_action(m, r, g); }, AlgebraHom::identity(a),
      FunctorTriple::ActionKind::canonical);
}

FunctorTriple trivial_triple(AlgebraRef algebra, std::size_t m, std::size_t r, AlgebraHom t) {
  return FunctorTriple::make(
      algebra, m, r, [algebra](const JetGroupElement&) { return AlgebraHom::identity(algebra); }, std::move(t),
      FunctorTriple::ActionKind::trivial);
}

FunctorTriple trivial_triple(AlgebraRef algebra, std::size_t m, std::size_t r) {
  auto t = compose(unit_inclusion(algebra), real_part(truncated(m, r)));
  return trivial_triple(std::move(algebra), m, r, std::move(t));
}

FunctorTriple triple_from_json(const nlohmann::json& j) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("triple: missing '") + key + "'");
    return j[key];
  };
  const auto& aj = need("algebra");
  const AlgebraRef a = aj.is_string() ? parse_algebra_expr(aj.get<std::string>()) : algebra_from_json(aj);
  const auto& mj = need("m");
  const auto& rj = need("r");
  if (!mj.is_number_integer() || !rj.is_number_integer() || mj.get<long long>() < 1 || rj.get<long long>() < 1)
    throw Error(ErrorKind::ParseError, "triple: 'm' and 'r' must be positive integers");
  const auto m = mj.get<std::size_t>();
  const auto r = rj.get<std::size_t>();
  const auto base = truncated(m, r);

  const auto& hj = need("H");
  if (!hj.is_string())
    throw Error(ErrorKind::ParseError, "triple: 'H' must be \"canonical\" or \"trivial\"; tabulated actions are not supported");
  const std::string hk = hj.get<std::string>();

  AlgebraHom t = AlgebraHom::identity(a);
  const auto tj = j.contains("t") ? j["t"] : nlohmann::json("identity");
  if (tj.is_string() && tj.get<std::string>() == "real") {
    t = compose(unit_inclusion(a), real_part(base));
  } else if (tj.is_string() && tj.get<std::string>() == "identity") {
    if (!same_algebra(a, base)) throw Error(ErrorKind::ParseError, "triple: t = identity needs A = " + base->name());
    t = AlgebraHom::create(base, a, Matrix::identity(a->dim()));
  } else if (tj.is_array()) {
    if (tj.size() != a->dim()) throw Error(ErrorKind::ParseError, "triple: 't' needs dim(A) rows");
    Matrix mat(a->dim(), base->dim());
    for (std::size_t row = 0; row < a->dim(); ++row) {
      if (!tj[row].is_array() || tj[row].size() != base->dim())
        throw Error(ErrorKind::ParseError, "triple: t[" + std::to_string(row) + "] needs " +
                                               std::to_string(base->dim()) + " entries");
      for (std::size_t col = 0; col < base->dim(); ++col) {
        if (!tj[row][col].is_number()) throw Error(ErrorKind::ParseError, "triple: t entries must be numbers");
        mat(row, col) = tj[row][col].get<double>();
      }
    }
    t = AlgebraHom::create(base, a, std::move(mat));
  } else {
    throw Error(ErrorKind::ParseError, "triple: 't' must be \"identity\", \"real\" or a matrix");
  }

  if (hk == "canonical") {
    if (!same_algebra(a, base)) throw Error(ErrorKind::ParseError, "triple: canonical H needs A = " + base->name());
    return FunctorTriple::make(
        a, m, r, [m, r](const JetGroupElement& g) { return canonical_action(m, r, g); }, std::move(t),
        FunctorTriple::ActionKind::canonical);
  }
  if (hk == "trivial") return trivial_triple(a, m, r, std::move(t));
  throw Error(ErrorKind::ParseError, "triple: unknown H '" + hk + "'");
}

nlohmann::json to_json(const FunctorTriple& t) {
  nlohmann::json mat = nlohmann::json::array();
  for (std::size_t row = 0; row < t.t().matrix().rows(); ++row) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t col = 0; col < t.t().matrix().cols(); ++col) r.push_back(t.t().matrix()(row, col));
    mat.push_back(std::move(r));
  }
  const char* h = t.kind() == FunctorTriple::ActionKind::canonical ? "canonical"
                  : t.kind() == FunctorTriple::ActionKind::trivial ? "trivial"
                                                                   : "custom";
  return {{"algebra", to_json(*t.algebra())}, {"m", t.m()}, {"r", t.r()}, {"H", h}, {"t", mat}};
}

void check_projectable(std::size_t m, const Program& f) {
  for (std::size_t i = 0; i < m && i < f.arity_out(); ++i)
    for (auto v : variables(f.output(i)))
      if (v >= m)
        throw Error(ErrorKind::NonProjectable, "base component " + std::to_string(i) + " depends on fiber variable " +
                                                   std::to_string(v - m));
}

GPoint g_apply(const FunctorTriple& triple, const FiberedMap& f, const GPoint& p) {
  const std::size_t m = triple.m();
  const auto& a = triple.algebra();
  if (f.m != m || p.x.size() != m) throw Error(ErrorKind::ArityMismatch, "fibered map and point must have base R^" + std::to_string(m));
  if (!same_algebra(p.q.algebra(), a)) throw Error(ErrorKind::AlgebraMismatch, "point is not over " + a->name());
  const std::size_t q = p.q.dim();
  if (f.map.arity_in() != m + q || f.map.arity_out() < m)
    throw Error(ErrorKind::ArityMismatch, "fibered map has the wrong arity");
  check_projectable(m, f.map);

  // New frame: the r-jet of f(x + y) - f(x).
  const auto tr = truncated(m, triple.r());
  std::vector<AlgebraElement> targs;
  for (std::size_t i = 0; i < m; ++i) targs.push_back(AlgebraElement::basis(tr, i + 1) + p.x[i]);
  for (std::size_t j = 0; j < q; ++j) targs.push_back(AlgebraElement::constant(tr, p.q[j].real_part()));
  const auto tout = f.map(tr, targs);
  std::vector<double> x_new;
  std::vector<AlgebraElement> g_comps;
  for (std::size_t i = 0; i < m; ++i) {
    x_new.push_back(tout[i].real_part());
    g_comps.push_back(tout[i]);
  }
  const JetGroupElement g(m, triple.r(), jet_coefficients(g_comps));

  std::vector<AlgebraElement> aargs;
  for (std::size_t i = 0; i < m; ++i) aargs.push_back(triple.t_generators()[i] + p.x[i]);
  for (std::size_t j = 0; j < q; ++j) aargs.push_back(p.q[j]);
  const auto aout = f.map(a, aargs);
  const auto hg = triple.H(g);
  std::vector<AlgebraElement> q_new;
  for (std::size_t j = m; j < aout.size(); ++j) q_new.push_back(hg(aout[j]));
  return {std::move(x_new), WeilPoint(a, std::move(q_new))};
}

FrameTangent frame_prolong(const Program& xi, std::size_t r, std::span<const double> x, const JetGroupElement& g) {
  const std::size_t m = x.size();
  if (xi.arity_in() != m || xi.arity_out() != m || g.m() != m || g.r() != r)
    throw Error(ErrorKind::ArityMismatch, "frame_prolong: field, point and jet dimensions differ");
  const auto tr = truncated(m, r);
  auto args = g.components();
  for (std::size_t i = 0; i < m; ++i) args[i] = args[i] + x[i];
  const auto v = xi(tr, args);
  FrameTangent out;
  for (const auto& e : v) out.x.push_back(e.real_part());
  out.g = jet_coefficients(v);
  return out;
}

VectorField frame_prolong_field(const Program& xi, std::size_t r) {
  const std::size_t m = xi.arity_in();
  const auto tr = truncated(m, r);
  const std::size_t nmon = tr->dim() - 1;
  std::vector<Element<Expr>> args;
  for (std::size_t i = 0; i < m; ++i) {
    Element<Expr> e(tr);
    e[0] = Expr::var(i);
    for (std::size_t k = 0; k < nmon; ++k) e[k + 1] = Expr::var(m + i * nmon + k);
    args.push_back(std::move(e));
  }
  const auto v = xi.over<Expr>(tr, args);
  std::vector<Expr> out;
  for (const auto& e : v) out.push_back(e[0]);
  for (const auto& e : v)
    for (std::size_t k = 1; k < e.size(); ++k) out.push_back(e[k]);
  return VectorField(Program(m + m * nmon, std::move(out)));
}

VectorField g_field_prolong(const FunctorTriple& triple, const VectorField& x_field) {
  const std::size_t m = triple.m();
  const auto& a = triple.algebra();
  const std::size_t d = a->dim();
  if (x_field.dim() < m) throw Error(ErrorKind::ArityMismatch, "field dimension is below the base dimension");
  const std::size_t q = x_field.dim() - m;
  const Program& f = x_field.components();
  check_projectable(m, f);

  std::vector<Expr> xs;
  for (std::size_t i = 0; i < m; ++i) xs.push_back(Expr::var(i));
  auto qvar = [&](std::size_t j, std::size_t k) { return Expr::var(m + j * d + k); };

  // Fiber part of T^A X at (x + t(y), q).
  std::vector<Element<Expr>> aargs;
  for (std::size_t i = 0; i < m; ++i) {
    Element<Expr> e(a);
    for (std::size_t k = 0; k < d; ++k) e[k] = Expr(triple.t_generators()[i][k]);
    e[a->unit_index()] = e[a->unit_index()] + xs[i];
    aargs.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < q; ++j) {
    Element<Expr> e(a);
    for (std::size_t k = 0; k < d; ++k) e[k] = qvar(j, k);
    aargs.push_back(std::move(e));
  }
  const auto lifted = f.over<Expr>(a, aargs);

  // Infinitesimal frame motion: the jet of xi(x + y) without its constant term.
  const auto tr = truncated(m, triple.r());
  std::vector<Element<Expr>> targs;
  for (std::size_t i = 0; i < m; ++i) {
    Element<Expr> e(tr);
    e[0] = xs[i];
    e[i + 1] = Expr(1.0);
    targs.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < q; ++j) targs.emplace_back(tr);
  const auto xi_jet = f.over<Expr>(tr, targs);
  std::vector<Expr> gdot;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 1; k < tr->dim(); ++k) gdot.push_back(xi_jet[i][k]);

  std::vector<Expr> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(xi_jet[i][0]);
  const auto& gens = triple.generators();
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      Expr v = lifted[m + j][k];
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Expr row;
        for (std::size_t b = 0; b < d; ++b) {
          const double c = gens[g](k, b);
          if (c != 0.0) row = row + Expr(c) * qvar(j, b);
        }
        if (!row.is_const(0.0)) v = v + gdot[g] * row;
      }
      out.push_back(v);
    }
  return VectorField(Program(m + q * d, std::move(out)));
}

Report check_g_bracket(const FunctorTriple& triple, const VectorField& x1, const VectorField& x2, std::size_t samples,
                 std::uint64_t seed, double tol) {
  Report report("g-bracket", triple.algebra()->name(), tol);
  report.extra["triple"] = triple.describe();
  // a user-supplied H is only checked on samples
  report.extra["H_validation"] = triple.kind() == FunctorTriple::ActionKind::custom ? "sampled" : "by construction";
  const auto g1 = g_field_prolong(triple, x1);
  const auto g2 = g_field_prolong(triple, x2);
  const auto lhs = bracket(g1, g2);
  const auto rhs = g_field_prolong(triple, bracket(x1, x2));
  const std::size_t n = lhs.dim();
  std::vector<double> errors(samples);
  parallel_for(samples, [&](std::size_t s) {
    auto rng = sample_rng(seed, "g-bracket/" + triple.describe(), s);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> p(n);
    for (auto& v : p) v = u(rng);
    errors[s] = max_abs_diff(lhs(p), rhs(p));
  });
  for (std::size_t s = 0; s < samples; ++s) report.record(s, errors[s]);
  return report;
}

}  // namespace weilcalc
