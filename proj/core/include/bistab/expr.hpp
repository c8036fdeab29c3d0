#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bistab/jet.hpp"

namespace bistab {

/// Immutable AST of a one-variable arithmetic expression.
///
/// Grammar (lowest to highest precedence):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | 'x' | call | '(' sum ')'
///   call    := ('exp'|'log'|'sqrt'|'tanh'|'atan'|'erf') '(' sum ')' | 'pow' '(' sum ',' sum ')'
///
/// The second argument of pow() must not depend on x.
class Expr {
 public:
  enum class Kind { number, variable, negate, add, subtract, multiply, divide, power, call };
  enum class Function { exp, log, sqrt, tanh, atan, erf, pow };

  static Expr number(double value);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr call(Function fn, std::vector<Expr> args);

  Kind kind() const noexcept;
  double number_value() const noexcept;
  Function function() const noexcept;
  /// Operands: one for negate, two for binary nodes, the arguments for calls.
  const std::vector<Expr>& operands() const noexcept;

  bool depends_on_x() const noexcept;

  /// Fully parenthesized text that parses back to a structurally identical tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view source);

/// Taylor jet of the expression at x.
Jet3 eval_jet3(const Expr& e, double x);
/// Taylor jet of e(u(t)) for an arbitrary input jet u.
Jet3 eval_jet3(const Expr& e, const Jet3& u);
double eval(const Expr& e, double x);

std::string_view function_name(Expr::Function fn) noexcept;

}  // namespace bistab
