#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace weilcalc {

enum class Op { Var, Const, Add, Sub, Mul, Div, Neg, IntPow, Sin, Cos, Exp, Log, Sqrt };

std::string op_name(Op op);
Op op_from_name(const std::string& name);
std::size_t op_arity(Op op);
/// Div, Log and Sqrt are only defined on part of the line.
bool op_is_partial(Op op);

struct Node;

/// Immutable expression DAG handle. Construction folds constants and the
/// trivial identities (x + 0, 1 * x, x - x, ...); nothing further.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor): constants mix freely with expressions

  static Expr var(std::size_t index);
  static Expr make(Op op, const Expr& a);
  static Expr make(Op op, const Expr& a, const Expr& b);
  static Expr int_pow(const Expr& a, int k);

  [[nodiscard]] Op op() const noexcept;
  [[nodiscard]] bool is_const() const noexcept { return op() == Op::Const; }
  [[nodiscard]] bool is_const(double v) const noexcept;
  [[nodiscard]] double value() const noexcept;
  [[nodiscard]] std::size_t index() const noexcept;  // Var index
  [[nodiscard]] int power() const noexcept;          // IntPow exponent
  [[nodiscard]] std::size_t arity() const noexcept;
  [[nodiscard]] Expr arg(std::size_t i) const;
  [[nodiscard]] std::size_t hash() const noexcept;
  [[nodiscard]] const Node* node() const noexcept { return node_.get(); }

  friend bool equal(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b) { return make(Op::Add, a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return make(Op::Sub, a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return make(Op::Mul, a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return make(Op::Div, a, b); }
  friend Expr operator-(const Expr& a) { return make(Op::Neg, a); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::Const;
  double value = 0.0;
  std::size_t index = 0;
  int power = 0;
  std::shared_ptr<const Node> args[2];
  std::size_t hash = 0;
};

Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);
Expr ipow(const Expr& a, int k);

/// Variables an expression depends on syntactically.
std::set<std::size_t> variables(const Expr& e);

/// Infix rendering; `names[i]` names Var(i).
std::string to_string(const Expr& e, const std::vector<std::string>& names);

}  // namespace weilcalc

namespace weilcalc {

/// Expanded, collected form of a purely polynomial expression (sums,
/// products, negation, non-negative integer powers, division by constants).
/// Anything else, or an expansion past a few hundred terms, comes back as is.
/// Used for display.
Expr expand_polynomial(const Expr& e);

}  // namespace weilcalc
