#include "speedlab/expr.hpp"

#include "speedlab/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>

namespace speedlab {

namespace {

enum class Var { t, x };
enum class Func { sin, cos, exp, abs };
enum class Op { add, sub, mul, div, pow };

} // namespace

struct Expr::Node {
  struct Number { double value; };
  struct Variable { Var var; };
  struct Negate { std::shared_ptr<const Node> arg; };
  struct Call { Func func; std::shared_ptr<const Node> arg; };
  struct Binary { Op op; std::shared_ptr<const Node> lhs, rhs; };

  std::variant<Number, Variable, Negate, Call, Binary> data;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(auto&& alternative) {
  return std::make_shared<const Expr::Node>(Expr::Node{std::forward<decltype(alternative)>(alternative)});
}

double eval_node(const Expr::Node& node, double t, double x) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Node::Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Expr::Node::Variable>) {
          return n.var == Var::t ? t : x;
        } else if constexpr (std::is_same_v<T, Expr::Node::Negate>) {
          return -eval_node(*n.arg, t, x);
        } else if constexpr (std::is_same_v<T, Expr::Node::Call>) {
          const double a = eval_node(*n.arg, t, x);
          switch (n.func) {
          case Func::sin: return std::sin(a);
          case Func::cos: return std::cos(a);
          case Func::exp: return std::exp(a);
          case Func::abs: return std::abs(a);
          }
          return 0.0;
        } else {
          const double a = eval_node(*n.lhs, t, x);
          const double b = eval_node(*n.rhs, t, x);
          switch (n.op) {
          case Op::add: return a + b;
          case Op::sub: return a - b;
          case Op::mul: return a * b;
          case Op::div: return a / b;
          case Op::pow: return std::pow(a, b);
          }
          return 0.0;
        }
      },
      node.data);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::abs(v));
  std::string s(buf);
  return v < 0 ? "(-" + s + ")" : s;
}

std::string print_node(const Expr::Node& node) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Node::Number>) {
          return format_number(n.value);
        } else if constexpr (std::is_same_v<T, Expr::Node::Variable>) {
          return n.var == Var::t ? "t" : "x";
        } else if constexpr (std::is_same_v<T, Expr::Node::Negate>) {
          return "(-" + print_node(*n.arg) + ")";
        } else if constexpr (std::is_same_v<T, Expr::Node::Call>) {
          static constexpr const char* names[] = {"sin", "cos", "exp", "abs"};
          return std::string(names[static_cast<int>(n.func)]) + "(" + print_node(*n.arg) + ")";
        } else {
          static constexpr const char* ops[] = {"+", "-", "*", "/", "^"};
          return "(" + print_node(*n.lhs) + ops[static_cast<int>(n.op)] + print_node(*n.rhs) + ")";
        }
      },
      node.data);
}

bool constant_node(const Expr::Node& node) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Node::Number>) {
          return true;
        } else if constexpr (std::is_same_v<T, Expr::Node::Variable>) {
          return false;
        } else if constexpr (std::is_same_v<T, Expr::Node::Binary>) {
          return constant_node(*n.lhs) && constant_node(*n.rhs);
        } else {
          return constant_node(*n.arg);
        }
      },
      node.data);
}

NodePtr reflect_node(const NodePtr& node) {
  return std::visit(
      [&](const auto& n) -> NodePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Node::Number>) {
          return node;
        } else if constexpr (std::is_same_v<T, Expr::Node::Variable>) {
          return n.var == Var::x ? make(Expr::Node::Negate{node}) : node;
        } else if constexpr (std::is_same_v<T, Expr::Node::Negate>) {
          return make(Expr::Node::Negate{reflect_node(n.arg)});
        } else if constexpr (std::is_same_v<T, Expr::Node::Call>) {
          return make(Expr::Node::Call{n.func, reflect_node(n.arg)});
        } else {
          return make(Expr::Node::Binary{n.op, reflect_node(n.lhs), reflect_node(n.rhs)});
        }
      },
      node->data);
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr node = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Expr::Node::Binary{Op::add, lhs, term()});
      else if (accept('-')) lhs = make(Expr::Node::Binary{Op::sub, lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) lhs = make(Expr::Node::Binary{Op::mul, lhs, factor()});
      else if (accept('/')) lhs = make(Expr::Node::Binary{Op::div, lhs, factor()});
      else return lhs;
    }
  }

  NodePtr factor() {
    NodePtr lhs = unary();
    while (accept('^')) lhs = make(Expr::Node::Binary{Op::pow, lhs, unary()});
    return lhs;
  }

  NodePtr unary() {
    if (accept('-')) return make(Expr::Node::Negate{unary()});
    return atom();
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make(Expr::Node::Number{value});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return make(Expr::Node::Variable{Var::t});
    if (name == "x") return make(Expr::Node::Variable{Var::x});
    if (name == "pi") return make(Expr::Node::Number{std::numbers::pi});
    if (name == "e") return make(Expr::Node::Number{std::numbers::e});
    Func func;
    if (name == "sin") func = Func::sin;
    else if (name == "cos") func = Func::cos;
    else if (name == "exp") func = Func::exp;
    else if (name == "abs") func = Func::abs;
    else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    if (!accept('(')) fail("expected '(' after function name");
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make(Expr::Node::Call{func, arg});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) : root_(make(Node::Number{value})) {}

Expr::Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Expr Expr::parse(std::string_view text) { return Expr(Parser(text).parse()); }

double Expr::eval(double t, double x) const {
  const double v = eval_node(*root_, t, x);
  if (!std::isfinite(v)) {
    throw EvalError("expression " + to_string() + " is not finite at t=" + std::to_string(t) +
                    ", x=" + std::to_string(x));
  }
  return v;
}

std::string Expr::to_string() const { return print_node(*root_); }

bool Expr::is_constant() const { return constant_node(*root_); }

Expr Expr::reflect_x() const { return Expr(reflect_node(root_)); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make(Expr::Node::Binary{Op::add, a.root_, b.root_})); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make(Expr::Node::Binary{Op::sub, a.root_, b.root_})); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make(Expr::Node::Binary{Op::mul, a.root_, b.root_})); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make(Expr::Node::Binary{Op::div, a.root_, b.root_})); }
Expr operator-(const Expr& a) { return Expr(make(Expr::Node::Negate{a.root_})); }

} // namespace speedlab
