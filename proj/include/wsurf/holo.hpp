#pragma once

// Holomorphic expressions in one complex variable t: parsing, printing and
// exact second-order evaluation through jets.
//
// Grammar (whitespace-insensitive):
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := "-" factor | primary ("^" integer)?
//   primary := number | "i" | "t" | ident "(" expr ")" | "(" expr ")"
//   ident   := exp | log | sqrt | sin | cos | sinh | cosh
//   number  := decimal literal, optional exponent part (1.5, 2e-3)
//   integer := decimal digits

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wsurf/jet.hpp"

namespace wsurf {

using cd = std::complex<double>;

enum class Func { Exp, Log, Sqrt, Sin, Cos, Sinh, Cosh };

const char* func_name(Func f);

/// Evaluator for functions without a closed form (e.g. g composed with a
/// numerically inverted map). Returns the jet of the function with respect
/// to its own argument at the given point.
using OpaqueFn = std::function<Jet(cd)>;

/// Immutable expression tree; copies share nodes.
class Expr {
 public:
  enum class Kind { Literal, ImagUnit, Var, Neg, Add, Sub, Mul, Div, Pow, Apply, Subst, Opaque };

  struct Node;

  Expr();  // literal 0

  static Expr literal(cd value);
  static Expr imag_unit();
  static Expr variable();
  static Expr apply(Func f, Expr arg);
  static Expr power(Expr base, int exponent);
  /// e(a t + b)
  static Expr subst(Expr e, cd a, cd b);
  static Expr opaque(std::string label, OpaqueFn fn);

  Kind kind() const;
  cd literal_value() const;
  int exponent() const;
  Func func() const;
  cd subst_scale() const;
  cd subst_shift() const;
  const std::string& label() const;
  const std::vector<Expr>& children() const;

  /// Structural dump such as Add(Pow(Var,2),Lit(1)); for tests and logs.
  std::string structure() const;

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);
  friend Expr operator-(Expr a);

  const Node* node() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse_expr(std::string_view text);

/// Re-parseable text; parse_expr(format_expr(e)) evaluates identically to e.
/// Opaque nodes print as <label> and make the text non-parseable; check
/// is_serializable first when the text must round-trip.
std::string format_expr(const Expr& e);

bool is_serializable(const Expr& e);

/// (e(t), e'(t), e''(t)) on principal branches. Throws DomainError at
/// log/sqrt of 0 or division by 0.
Jet eval_jet(const Expr& e, cd t);

/// Evaluates with an arbitrary jet standing in for the variable (chain rule).
Jet eval_jet(const Expr& e, const Jet& var);

cd eval(const Expr& e, cd t);

/// Expression evaluating to e(a t + b).
Expr compose_affine(const Expr& e, cd a, cd b);

/// Symbolic derivative in t. Opaque nodes differentiate through their jet,
/// losing one order (the second derivative of the result is NaN).
Expr differentiate(const Expr& e);

/// Shortest round-trip text of a complex constant in grammar syntax.
std::string format_complex(cd c);

}  // namespace wsurf
