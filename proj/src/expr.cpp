#include "weilcalc/expr.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "weilcalc/error.hpp"

namespace weilcalc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::shared_ptr<const Node> make_node(Op op, double value, std::size_t index, int power,
                                      std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->index = index;
  n->power = power;
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  h = mix(h, std::bit_cast<std::uint64_t>(value == 0.0 ? 0.0 : value));
  h = mix(h, index);
  h = mix(h, static_cast<std::size_t>(power));
  if (a) h = mix(h, a->hash);
  if (b) h = mix(h, b->hash);
  n->hash = h;
  n->args[0] = std::move(a);
  n->args[1] = std::move(b);
  return n;
}

const std::shared_ptr<const Node>& zero_node() {
  static const auto z = make_node(Op::Const, 0.0, 0, 0, nullptr, nullptr);
  return z;
}

bool node_equal(const Node* a, const Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->op != b->op || a->index != b->index || a->power != b->power) return false;
  if (a->op == Op::Const) return a->value == b->value;
  return node_equal(a->args[0].get(), b->args[0].get()) && node_equal(a->args[1].get(), b->args[1].get());
}

}  // namespace

std::string op_name(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Const: return "const";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Neg: return "neg";
    case Op::IntPow: return "ipow";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
  }
  return "?";
}

Op op_from_name(const std::string& name) {
  static const Op all[] = {Op::Var, Op::Const, Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Neg,
                           Op::IntPow, Op::Sin, Op::Cos, Op::Exp, Op::Log, Op::Sqrt};
  for (Op op : all)
    if (op_name(op) == name) return op;
  throw Error(ErrorKind::ParseError, "unknown op '" + name + "'");
}

std::size_t op_arity(Op op) {
  switch (op) {
    case Op::Var:
    case Op::Const: return 0;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return 2;
    default: return 1;
  }
}

bool op_is_partial(Op op) { return op == Op::Div || op == Op::Log || op == Op::Sqrt; }

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(double value)
    : node_(value == 0.0 ? zero_node() : make_node(Op::Const, value, 0, 0, nullptr, nullptr)) {}

Expr Expr::var(std::size_t index) { return Expr(make_node(Op::Var, 0.0, index, 0, nullptr, nullptr)); }

Op Expr::op() const noexcept { return node_->op; }
bool Expr::is_const(double v) const noexcept { return node_->op == Op::Const && node_->value == v; }
double Expr::value() const noexcept { return node_->value; }
std::size_t Expr::index() const noexcept { return node_->index; }
int Expr::power() const noexcept { return node_->power; }
std::size_t Expr::arity() const noexcept { return op_arity(node_->op); }
Expr Expr::arg(std::size_t i) const { return Expr(node_->args[i]); }
std::size_t Expr::hash() const noexcept { return node_->hash; }

bool equal(const Expr& a, const Expr& b) { return node_equal(a.node(), b.node()); }

Expr Expr::make(Op op, const Expr& a) {
  if (a.is_const()) {
    const double v = a.value();
    switch (op) {
      case Op::Neg: return Expr(-v);
      case Op::Sin: return Expr(std::sin(v));
      case Op::Cos: return Expr(std::cos(v));
      case Op::Exp: return Expr(std::exp(v));
      case Op::Log:
        if (v > 0.0) return Expr(std::log(v));
        break;
      case Op::Sqrt:
        if (v >= 0.0) return Expr(std::sqrt(v));
        break;
      default: break;
    }
  }
  if (op == Op::Neg && a.op() == Op::Neg) return a.arg(0);
  if (op_arity(op) != 1) throw Error(ErrorKind::ArityMismatch, op_name(op) + " is not unary");
  return Expr(make_node(op, 0.0, 0, 0, a.node_, nullptr));
}

Expr Expr::make(Op op, const Expr& a, const Expr& b) {
  const bool ca = a.is_const();
  const bool cb = b.is_const();
  switch (op) {
    case Op::Add:
      if (ca && cb) return Expr(a.value() + b.value());
      if (a.is_const(0.0)) return b;
      if (b.is_const(0.0)) return a;
      if (b.op() == Op::Neg) return make(Op::Sub, a, b.arg(0));
      break;
    case Op::Sub:
      if (ca && cb) return Expr(a.value() - b.value());
      if (b.is_const(0.0)) return a;
      if (a.is_const(0.0)) return make(Op::Neg, b);
      if (equal(a, b)) return Expr();
      break;
    case Op::Mul:
      if (ca && cb) return Expr(a.value() * b.value());
      if (a.is_const(0.0) || b.is_const(0.0)) return Expr();
      if (a.is_const(1.0)) return b;
      if (b.is_const(1.0)) return a;
      if (a.is_const(-1.0)) return make(Op::Neg, b);
      if (b.is_const(-1.0)) return make(Op::Neg, a);
      break;
    case Op::Div:
      if (ca && cb && b.value() != 0.0) return Expr(a.value() / b.value());
      if (b.is_const(1.0)) return a;
      if (a.is_const(0.0) && !(cb && b.value() == 0.0)) return Expr();
      break;
    default: throw Error(ErrorKind::ArityMismatch, op_name(op) + " is not binary");
  }
  return Expr(make_node(op, 0.0, 0, 0, a.node_, b.node_));
}

Expr Expr::int_pow(const Expr& a, int k) {
  if (k == 0) return Expr(1.0);
  if (k == 1) return a;
  if (a.is_const()) {
    double out = 1.0;
    const double base = k < 0 ? 1.0 / a.value() : a.value();
    for (int i = 0; i < std::abs(k); ++i) out *= base;
    if (std::isfinite(out)) return Expr(out);
  }
  return Expr(make_node(Op::IntPow, 0.0, 0, k, a.node_, nullptr));
}

Expr sin(const Expr& a) { return Expr::make(Op::Sin, a); }
Expr cos(const Expr& a) { return Expr::make(Op::Cos, a); }
Expr exp(const Expr& a) { return Expr::make(Op::Exp, a); }
Expr log(const Expr& a) { return Expr::make(Op::Log, a); }
Expr sqrt(const Expr& a) { return Expr::make(Op::Sqrt, a); }
Expr ipow(const Expr& a, int k) { return Expr::int_pow(a, k); }

std::set<std::size_t> variables(const Expr& e) {
  std::set<std::size_t> out;
  std::unordered_set<const Node*> seen;
  std::function<void(const Node*)> walk = [&](const Node* n) {
    if (!n || !seen.insert(n).second) return;
    if (n->op == Op::Var) out.insert(n->index);
    walk(n->args[0].get());
    walk(n->args[1].get());
  };
  walk(e.node());
  return out;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::IntPow: return 4;
    default: return 5;
  }
}

std::string render(const Expr& e, const std::vector<std::string>& names, int parent, bool right_operand) {
  std::string s;
  const int prec = precedence(e.op());
  switch (e.op()) {
    case Op::Var:
      s = e.index() < names.size() ? names[e.index()] : "v" + std::to_string(e.index());
      break;
    case Op::Const:
      s = format_number(e.value());
      if (e.value() < 0) s = "(" + s + ")";
      break;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char* sym = e.op() == Op::Add ? " + " : e.op() == Op::Sub ? " - " : e.op() == Op::Mul ? "*" : "/";
      s = render(e.arg(0), names, prec, false) + sym + render(e.arg(1), names, prec, true);
      break;
    }
    case Op::Neg: {
      // -(a*b) reads the same as -a*b
      const Op inner = e.arg(0).op();
      s = "-" + render(e.arg(0), names, inner == Op::Mul || inner == Op::Div ? 2 : prec, false);
      break;
    }
    case Op::IntPow: {
      const std::string k = e.power() < 0 ? "(" + std::to_string(e.power()) + ")" : std::to_string(e.power());
      s = render(e.arg(0), names, prec + 1, false) + "^" + k;
      break;
    }
    default: s = op_name(e.op()) + "(" + render(e.arg(0), names, 0, false) + ")"; break;
  }
  const bool needs = prec < parent || (right_operand && prec == parent && (parent == 1 || parent == 2));
  return needs ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Expr& e, const std::vector<std::string>& names) { return render(e, names, 0, false); }

}  // namespace weilcalc
