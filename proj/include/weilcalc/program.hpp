#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "weilcalc/element.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/expr.hpp"
#include "weilcalc/linalg.hpp"

namespace weilcalc {

/// A smooth map R^n -> R^p as p expression trees over Var(0..n-1).
///
/// The trees are flattened once into a tape with shared subexpressions
/// evaluated a single time, so evaluation is linear in the DAG size on any
/// carrier: double, Expr (substitution), or Element<T> over a Weil algebra
/// (the Weil functor on maps).
class Program {
 public:
  Program() = default;
  /// Throws ArityMismatch if an output references Var(i) with i >= arity_in.
  Program(std::size_t arity_in, std::vector<Expr> outputs);

  static Program identity(std::size_t n);

  [[nodiscard]] std::size_t arity_in() const noexcept { return arity_in_; }
  [[nodiscard]] std::size_t arity_out() const noexcept { return outputs_.size(); }
  [[nodiscard]] const std::vector<Expr>& outputs() const noexcept { return outputs_; }
  [[nodiscard]] const Expr& output(std::size_t i) const { return outputs_.at(i); }
  [[nodiscard]] bool is_partial() const noexcept { return partial_; }
  [[nodiscard]] std::size_t tape_size() const noexcept { return tape_.size(); }

  /// Evaluates over any carrier with ring operations and sin/cos/exp/log/
  /// sqrt/ipow found by argument-dependent lookup. `constant` lifts a real.
  template <class T, class MakeConst>
  std::vector<T> evaluate(std::span<const T> args, MakeConst&& constant) const;

  std::vector<double> operator()(std::span<const double> x) const;
  std::vector<double> operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }
  /// Symbolic substitution of the inputs.
  std::vector<Expr> substitute(std::span<const Expr> args) const;
  /// Evaluation over a Weil algebra; `algebra` is needed when arity_in is 0.
  std::vector<AlgebraElement> operator()(const AlgebraRef& algebra, std::span<const AlgebraElement> x) const;
  template <class T>
  std::vector<Element<T>> over(const AlgebraRef& algebra, std::span<const Element<T>> x) const {
    return evaluate<Element<T>>(x, [&](double c) { return Element<T>::constant(algebra, T(c)); });
  }

 private:
  struct Instr {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    int power = 0;
    std::size_t index = 0;
    double value = 0.0;
  };

  std::size_t arity_in_ = 0;
  std::vector<Expr> outputs_;
  std::vector<Instr> tape_;
  std::vector<std::uint32_t> result_slots_;
  bool partial_ = false;
};

template <class T, class MakeConst>
std::vector<T> Program::evaluate(std::span<const T> args, MakeConst&& constant) const {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  if (args.size() != arity_in_)
    throw Error(ErrorKind::ArityMismatch, "program expects " + std::to_string(arity_in_) + " arguments, got " +
                                              std::to_string(args.size()));
  std::vector<T> slot;
  slot.reserve(tape_.size());
  for (const Instr& in : tape_) {
    switch (in.op) {
      case Op::Var: slot.push_back(args[in.index]); break;
      case Op::Const: slot.push_back(constant(in.value)); break;
      case Op::Add: slot.push_back(slot[in.a] + slot[in.b]); break;
      case Op::Sub: slot.push_back(slot[in.a] - slot[in.b]); break;
      case Op::Mul: slot.push_back(slot[in.a] * slot[in.b]); break;
      case Op::Div: {
        if constexpr (std::is_same_v<T, double>) {
          if (slot[in.b] == 0.0) throw Error(ErrorKind::DivisionByNilpotent, "division by zero");
        }
        slot.push_back(slot[in.a] / slot[in.b]);
        break;
      }
      case Op::Neg: slot.push_back(-slot[in.a]); break;
      case Op::IntPow: {
        if constexpr (std::is_same_v<T, double>) {
          if (in.power < 0 && slot[in.a] == 0.0) throw Error(ErrorKind::DivisionByNilpotent, "negative power of zero");
        }
        slot.push_back(ipow(slot[in.a], in.power));
        break;
      }
      case Op::Sin: slot.push_back(sin(slot[in.a])); break;
      case Op::Cos: slot.push_back(cos(slot[in.a])); break;
      case Op::Exp: slot.push_back(exp(slot[in.a])); break;
      case Op::Log: {
        if constexpr (std::is_same_v<T, double>) {
          if (!(slot[in.a] > 0.0)) throw Error(ErrorKind::DomainError, "log of non-positive value");
        }
        slot.push_back(log(slot[in.a]));
        break;
      }
      case Op::Sqrt: {
        if constexpr (std::is_same_v<T, double>) {
          if (slot[in.a] < 0.0) throw Error(ErrorKind::DomainError, "sqrt of negative value");
        }
        slot.push_back(sqrt(slot[in.a]));
        break;
      }
    }
  }
  std::vector<T> out;
  out.reserve(result_slots_.size());
  for (auto s : result_slots_) out.push_back(slot[s]);
  return out;
}

/// f o g: substitutes g's outputs for f's variables. Throws ArityMismatch.
Program compose(const Program& f, const Program& g);

/// Stacks programs with a common arity_in into one program.
Program concat(const std::vector<Program>& parts);

/// Vector field on R^n: the principal part X: R^n -> R^n.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Program components);

  [[nodiscard]] std::size_t dim() const noexcept { return components_.arity_in(); }
  [[nodiscard]] const Program& components() const noexcept { return components_; }
  std::vector<double> operator()(std::span<const double> x) const { return components_(x); }

 private:
  Program components_;
};

/// Central-difference Jacobian, rows = outputs. With `richardson`, combines
/// steps h and h/2 for O(h^4) accuracy.
Matrix jacobian_oracle(const Program& f, std::span<const double> x, double h = 1e-5, bool richardson = false);

/// Classical bracket DY.X - DX.Y by finite differences.
std::vector<double> jacobian_bracket_oracle(const VectorField& x_field, const VectorField& y_field,
                                            std::span<const double> at, double h = 1e-5);

// Random programs for property checks.

struct RandomProgramOptions {
  std::size_t max_degree = 3;
  std::size_t terms = 3;
  double coeff_range = 1.0;
  bool transcendental = false;  // also sin/cos/exp factors
};

Program random_polynomial(std::size_t arity_in, std::size_t arity_out, std::mt19937_64& rng,
                          const RandomProgramOptions& options = {});

// Serialization: {"in": n, "out": p, "exprs": [node...]},
// node = {"op": str, "args": [...]} | {"op": "var", "i": k} | {"op": "const", "c": x};
// ipow carries its exponent in "i".

nlohmann::json to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Program& p);
Program program_from_json(const nlohmann::json& j);

/// Default variable names: "x" for one input, else x1..xn.
std::vector<std::string> default_names(std::size_t n);
std::string to_string(const Program& p, const std::vector<std::string>& names = {});

}  // namespace weilcalc
