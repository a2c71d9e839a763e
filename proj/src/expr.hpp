#pragma once

// Formula language for the free functions of u (delta, kappa, lambda, f, g).
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-'? base ('^' int)?
//   base   := number | 'u' | ident '(' expr ')' | '(' expr ')'
//
// '^' binds tighter than unary minus: -u^2 is -(u^2). Numbers are decimal
// literals with optional exponent. There is no implicit multiplication.

#include <memory>
#include <string>
#include <string_view>

#include "scalar_fn.hpp"

namespace rulekit::expr {

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::Number;
  double number = 0.0;  // Number
  int exponent = 0;     // Pow
  Func func = Func::Sin;  // Call
  NodePtr lhs;          // unary operand, left operand, base, or call argument
  NodePtr rhs;          // right operand of binary ops
};

/// Immutable expression tree.
class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& ptr() const { return root_; }

  /// True when the tree contains log, sqrt or abs (points where the
  /// derivative may not exist).
  bool maybe_nonsmooth() const;

  /// Canonical text: minimal parentheses, shortest round-trip numbers.
  std::string print() const;

  /// Jet at u. Throws Error(Singular) at singular points.
  Jet3 eval(double u) const;

  /// Plain value at u (same singularity rules as eval).
  double value(double u) const { return eval(u).v0; }

 private:
  NodePtr root_;
};

/// Throws SyntaxError with the byte offset of the offending token; unknown
/// identifiers are reported the same way.
Expr parse(std::string_view text);

/// Wraps the expression as a ScalarFn over `domain`, labelled with its
/// canonical text.
ScalarFn compile(const Expr& e, Interval domain);

/// parse + compile.
ScalarFn compile(std::string_view text, Interval domain);

const char* func_name(Func f);

}  // namespace rulekit::expr
