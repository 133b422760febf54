#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace speedlab {

// Immutable expression in the variables t and x.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' unary)*
//   unary  := '-' unary | atom
//   atom   := number | 't' | 'x' | 'pi' | 'e'
//           | ('sin'|'cos'|'exp'|'abs') '(' expr ')' | '(' expr ')'
//
// '^' is left associative and binds looser than unary minus, so -2^2 == 4.
class Expr {
public:
  struct Node;

  Expr();  // the constant 0
  explicit Expr(double value);

  static Expr parse(std::string_view text);

  // Throws EvalError when the value is not finite.
  double eval(double t, double x) const;

  // Fully parenthesized text; parse(to_string()) evaluates identically.
  std::string to_string() const;

  bool is_constant() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  // Substitutes x -> -x.
  Expr reflect_x() const;

private:
  explicit Expr(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

} // namespace speedlab
