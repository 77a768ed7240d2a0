#include "weilcalc/program.hpp"

#include <unordered_map>

namespace weilcalc {

Program::Program(std::size_t arity_in, std::vector<Expr> outputs)
    : arity_in_(arity_in), outputs_(std::move(outputs)) {
  std::unordered_map<const Node*, std::uint32_t> seen;
  auto emit = [&](auto&& self, const Expr& e) -> std::uint32_t {
    const Node* n = e.node();
    if (auto it = seen.find(n); it != seen.end()) return it->second;
    Instr in{e.op()};
    switch (e.op()) {
      case Op::Var:
        if (e.index() >= arity_in_)
          throw Error(ErrorKind::ArityMismatch, "variable index " + std::to_string(e.index()) +
                                                    " out of range for arity " + std::to_string(arity_in_));
        in.index = e.index();
        break;
      case Op::Const: in.value = e.value(); break;
      default:
        in.a = self(self, e.arg(0));
        if (e.arity() == 2) in.b = self(self, e.arg(1));
        in.power = e.power();
        if (op_is_partial(e.op()) || (e.op() == Op::IntPow && e.power() < 0)) partial_ = true;
        break;
    }
    const auto slot = static_cast<std::uint32_t>(tape_.size());
    tape_.push_back(in);
    seen.emplace(n, slot);
    return slot;
  };
  for (const auto& e : outputs_) result_slots_.push_back(emit(emit, e));
}

Program Program::identity(std::size_t n) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Expr::var(i));
  return Program(n, std::move(out));
}

std::vector<double> Program::operator()(std::span<const double> x) const {
  return evaluate<double>(x, [](double c) { return c; });
}

std::vector<Expr> Program::substitute(std::span<const Expr> args) const {
  return evaluate<Expr>(args, [](double c) { return Expr(c); });
}

std::vector<AlgebraElement> Program::operator()(const AlgebraRef& algebra, std::span<const AlgebraElement> x) const {
  return over<double>(algebra, x);
}

Program compose(const Program& f, const Program& g) {
  if (g.arity_out() != f.arity_in())
    throw Error(ErrorKind::ArityMismatch, "compose: inner program has " + std::to_string(g.arity_out()) +
                                              " outputs, outer expects " + std::to_string(f.arity_in()));
  return Program(g.arity_in(), f.substitute(g.outputs()));
}

Program concat(const std::vector<Program>& parts) {
  if (parts.empty()) return Program(0, {});
  std::vector<Expr> out;
  for (const auto& p : parts) {
    if (p.arity_in() != parts.front().arity_in()) throw Error(ErrorKind::ArityMismatch, "concat: arity_in differs");
    out.insert(out.end(), p.outputs().begin(), p.outputs().end());
  }
  return Program(parts.front().arity_in(), std::move(out));
}

VectorField::VectorField(Program components) : components_(std::move(components)) {
  if (components_.arity_in() != components_.arity_out())
    throw Error(ErrorKind::ArityMismatch, "vector field needs arity_in == arity_out, got " +
                                              std::to_string(components_.arity_in()) + " -> " +
                                              std::to_string(components_.arity_out()));
}

Matrix jacobian_oracle(const Program& f, std::span<const double> x, double h, bool richardson) {
  const std::size_t n = f.arity_in();
  const std::size_t p = f.arity_out();
  if (x.size() != n) throw Error(ErrorKind::ArityMismatch, "jacobian_oracle point size");
  if (!(h > 0.0)) throw Error(ErrorKind::DomainError, "finite-difference step must be positive");
  auto central = [&](double step) {
    Matrix jac(p, n);
    std::vector<double> xp(x.begin(), x.end());
    for (std::size_t j = 0; j < n; ++j) {
      const double orig = xp[j];
      xp[j] = orig + step;
      const auto fp = f(xp);
      xp[j] = orig - step;
      const auto fm = f(xp);
      xp[j] = orig;
      for (std::size_t i = 0; i < p; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * step);
    }
    return jac;
  };
  Matrix coarse = central(h);
  if (!richardson) return coarse;
  const Matrix fine = central(h / 2.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < n; ++j) coarse(i, j) = (4.0 * fine(i, j) - coarse(i, j)) / 3.0;
  return coarse;
}

std::vector<double> jacobian_bracket_oracle(const VectorField& xf, const VectorField& yf, std::span<const double> at,
                                            double h) {
  const auto xv = xf(at);
  const auto yv = yf(at);
  const auto dx = jacobian_oracle(xf.components(), at, h, true);
  const auto dy = jacobian_oracle(yf.components(), at, h, true);
  const auto dy_x = dy * std::span<const double>(xv);
  const auto dx_y = dx * std::span<const double>(yv);
  std::vector<double> out(at.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = dy_x[i] - dx_y[i];
  return out;
}

Program random_polynomial(std::size_t arity_in, std::size_t arity_out, std::mt19937_64& rng,
                          const RandomProgramOptions& options) {
  std::uniform_real_distribution<double> coeff(-options.coeff_range, options.coeff_range);
  std::uniform_int_distribution<std::size_t> degree(0, options.max_degree);
  std::uniform_int_distribution<std::size_t> pick_var(0, arity_in == 0 ? 0 : arity_in - 1);
  std::uniform_int_distribution<int> pick_fn(0, 5);
  std::vector<Expr> outs;
  for (std::size_t o = 0; o < arity_out; ++o) {
    Expr total(coeff(rng));
    for (std::size_t t = 0; t < options.terms; ++t) {
      Expr term(coeff(rng));
      const std::size_t deg = arity_in == 0 ? 0 : degree(rng);
      // Collect exponents per variable so x*x prints as x^2.
      std::vector<int> exps(arity_in, 0);
      for (std::size_t d = 0; d < deg; ++d) ++exps[pick_var(rng)];
      for (std::size_t v = 0; v < arity_in; ++v)
        if (exps[v] > 0) term = term * ipow(Expr::var(v), exps[v]);
      if (options.transcendental && arity_in > 0) {
        const Expr arg = Expr::var(pick_var(rng)) * Expr(coeff(rng));
        switch (pick_fn(rng)) {
          case 0: term = term * sin(arg); break;
          case 1: term = term * cos(arg); break;
          case 2: term = term * exp(arg); break;
          default: break;
        }
      }
      total = total + term;
    }
    outs.push_back(total);
  }
  return Program(arity_in, std::move(outs));
}

nlohmann::json to_json(const Expr& e) {
  using nlohmann::json;
  json j;
  j["op"] = op_name(e.op());
  switch (e.op()) {
    case Op::Var: j["i"] = e.index(); break;
    case Op::Const: j["c"] = e.value(); break;
    default: {
      json args = json::array();
      for (std::size_t i = 0; i < e.arity(); ++i) args.push_back(to_json(e.arg(i)));
      j["args"] = std::move(args);
      if (e.op() == Op::IntPow) j["i"] = e.power();
      break;
    }
  }
  return j;
}

Expr expr_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw Error(ErrorKind::ParseError, "expression node needs a string 'op'");
  const Op op = op_from_name(j["op"].get<std::string>());
  switch (op) {
    case Op::Var:
      if (!j.contains("i") || !j["i"].is_number_integer() || j["i"].get<long long>() < 0)
        throw Error(ErrorKind::ParseError, "var node needs a non-negative integer 'i'");
      return Expr::var(j["i"].get<std::size_t>());
    case Op::Const:
      if (!j.contains("c") || !j["c"].is_number()) throw Error(ErrorKind::ParseError, "const node needs number 'c'");
      return Expr(j["c"].get<double>());
    default: break;
  }
  if (!j.contains("args") || !j["args"].is_array() || j["args"].size() != op_arity(op))
    throw Error(ErrorKind::ParseError, op_name(op) + " node needs " + std::to_string(op_arity(op)) + " args");
  const Expr a = expr_from_json(j["args"][0]);
  if (op == Op::IntPow) {
    if (!j.contains("i") || !j["i"].is_number_integer()) throw Error(ErrorKind::ParseError, "ipow needs integer 'i'");
    return Expr::int_pow(a, j["i"].get<int>());
  }
  if (op_arity(op) == 2) return Expr::make(op, a, expr_from_json(j["args"][1]));
  return Expr::make(op, a);
}

nlohmann::json to_json(const Program& p) {
  nlohmann::json exprs = nlohmann::json::array();
  for (const auto& e : p.outputs()) exprs.push_back(to_json(e));
  return {{"in", p.arity_in()}, {"out", p.arity_out()}, {"exprs", std::move(exprs)}};
}

Program program_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("in") || !j.contains("exprs") || !j["in"].is_number_integer() ||
      !j["exprs"].is_array())
    throw Error(ErrorKind::ParseError, "program needs integer 'in' and array 'exprs'");
  std::vector<Expr> outs;
  for (const auto& e : j["exprs"]) outs.push_back(expr_from_json(e));
  if (j.contains("out") && j["out"].get<std::size_t>() != outs.size())
    throw Error(ErrorKind::ParseError, "'out' does not match the number of expressions");
  return Program(j["in"].get<std::size_t>(), std::move(outs));
}

std::vector<std::string> default_names(std::size_t n) {
  if (n == 1) return {"x"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

std::string to_string(const Program& p, const std::vector<std::string>& names) {
  const auto& use = names.empty() ? default_names(p.arity_in()) : names;
  std::string out = "[";
  for (std::size_t i = 0; i < p.arity_out(); ++i) {
    if (i) out += ", ";
    out += to_string(p.output(i), use);
  }
  return out + "]";
}

}  // namespace weilcalc
