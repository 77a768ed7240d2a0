#include "weilcalc/oracles.hpp"

#include <cmath>

#include "weilcalc/error.hpp"

namespace weilcalc::oracle {

namespace {

using State = std::vector<AlgebraElement>;

State axpy(const State& z, double a, const State& k) {
  State out = z;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k[i] * a;
  return out;
}

State flow(const Program& xi, const AlgebraRef& alg, State z, double time, double step) {
  const auto n = static_cast<std::size_t>(std::ceil(std::abs(time) / step));
  const double h = time / static_cast<double>(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto k1 = xi(alg, z);
    const auto k2 = xi(alg, axpy(z, h / 2, k1));
    const auto k3 = xi(alg, axpy(z, h / 2, k2));
    const auto k4 = xi(alg, axpy(z, h, k3));
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6);
  }
  return z;
}

double eval1(const Program& p, double x) { return p({x})[0]; }

}  // namespace

FrameTangent frame_flow(const Program& xi, std::size_t r, std::span<const double> x, const JetGroupElement& g,
                        double step, double tau) {
  const std::size_t m = x.size();
  const auto alg = truncated(m, r);
  State z0;
  for (std::size_t i = 0; i < m; ++i) {
    AlgebraElement e = AlgebraElement::constant(alg, x[i]);
    for (std::size_t k = 1; k < alg->dim(); ++k) e[k] = g.coeff(i, k);
    z0.push_back(std::move(e));
  }
  const auto plus = flow(xi, alg, z0, tau, step);
  const auto minus = flow(xi, alg, z0, -tau, step);
  FrameTangent out;
  for (std::size_t i = 0; i < m; ++i) out.x.push_back((plus[i][0] - minus[i][0]) / (2 * tau));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 1; k < alg->dim(); ++k) out.g.push_back((plus[i][k] - minus[i][k]) / (2 * tau));
  return out;
}

std::array<double, 2> classical_prolongation(const Program& phi, double x, double u, double u1, double h) {
  auto f = [&](double a, double b) { return phi({a, b})[0]; };
  const double phi_x = (f(x + h, u) - f(x - h, u)) / (2 * h);
  const double phi_u = (f(x, u + h) - f(x, u - h)) / (2 * h);
  return {f(x, u), phi_x + u1 * phi_u};
}

FunctionalVectorField to_functional(const PolyFamilyField& f) {
  // inputs x, y, z0, z1
  std::vector<Expr> p;
  for (const auto& prog : f.p) p.push_back(prog.substitute(std::vector<Expr>{Expr::var(0)})[0]);
  const Expr y = Expr::var(1);
  const Expr z0 = Expr::var(2);
  const Expr z1 = Expr::var(3);
  const Expr d = p[0] + p[1] * z0 + p[2] * y * z1 + p[3] * z1;
  return {FunctionalSignature{1, 1, 1}, 1, f.xi, Program(4, {d})};
}

std::vector<double> nodes(std::size_t degree) {
  std::vector<double> out;
  for (std::size_t k = 0; k <= degree; ++k)
    out.push_back(-1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(degree, 1)));
  return out;
}

std::vector<double> vandermonde_coefficients(const std::function<double(double)>& f, std::size_t degree) {
  const auto ys = nodes(degree);
  const std::size_t n = degree + 1;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) v(i, k) = std::pow(ys[i], static_cast<double>(k));
  const auto inv = inverse(v);
  if (!inv) throw Error(ErrorKind::SingularLinearPart, "Vandermonde matrix is singular");
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = f(ys[i]);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) out[k] += (*inv)(k, i) * vals[i];
  return out;
}

std::vector<double> coefficient_field(const PolyFamilyField& f, std::size_t degree, std::span<const double> state) {
  if (state.size() != degree + 2) throw Error(ErrorKind::ArityMismatch, "state must be (x, c_0..c_d)");
  const double x = state[0];
  const auto c = state.subspan(1);
  double p[4];
  for (int i = 0; i < 4; ++i) p[i] = eval1(f.p[i], x);
  auto v = [&](double y) {
    double h = 0.0;
    double dh = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      h += c[k] * std::pow(y, static_cast<double>(k));
      if (k > 0) dh += static_cast<double>(k) * c[k] * std::pow(y, static_cast<double>(k - 1));
    }
    return p[0] + p[1] * h + p[2] * y * dh + p[3] * dh;
  };
  std::vector<double> out{eval1(f.xi, x)};
  const auto coeffs = vandermonde_coefficients(v, degree);
  out.insert(out.end(), coeffs.begin(), coeffs.end());
  return out;
}

std::vector<double> coefficient_bracket(const PolyFamilyField& a, const PolyFamilyField& b, std::size_t degree,
                                        std::span<const double> state, double h) {
  const std::size_t n = state.size();
  auto directional = [&](const PolyFamilyField& f, std::span<const double> dir) {
    auto central = [&](double step) {
      std::vector<double> p(state.begin(), state.end());
      std::vector<double> q(state.begin(), state.end());
      for (std::size_t i = 0; i < n; ++i) {
        p[i] += step * dir[i];
        q[i] -= step * dir[i];
      }
      const auto fp = coefficient_field(f, degree, p);
      const auto fq = coefficient_field(f, degree, q);
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = (fp[i] - fq[i]) / (2 * step);
      return out;
    };
    const auto coarse = central(h);
    const auto fine = central(h / 2);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (4 * fine[i] - coarse[i]) / 3;
    return out;
  };
  const auto fa = coefficient_field(a, degree, state);
  const auto fb = coefficient_field(b, degree, state);
  const auto db_a = directional(b, fa);
  const auto da_b = directional(a, fb);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = db_a[i] - da_b[i];
  return out;
}

}  // namespace weilcalc::oracle
