#include "expr.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "error.hpp"

namespace rulekit::expr {

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Abs: return "abs";
  }
  return "?";
}

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr binary(Kind k, NodePtr a, NodePtr b) {
  Node n;
  n.kind = k;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make(std::move(n));
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    skip();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    NodePtr root = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected trailing input");
    return Expr(std::move(root));
  }

 private:
  void skip() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = binary(c == '+' ? Kind::Add : Kind::Sub, lhs, term());
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = binary(c == '*' ? Kind::Mul : Kind::Div, lhs, factor());
    }
  }

  NodePtr factor() {
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    NodePtr b = base();
    if (peek() == '^') {
      ++pos_;
      Node p;
      p.kind = Kind::Pow;
      p.exponent = integer();
      p.lhs = std::move(b);
      b = make(std::move(p));
    }
    if (!negate) return b;
    Node n;
    n.kind = Kind::Neg;
    n.lhs = std::move(b);
    return make(std::move(n));
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    const std::size_t digits = end;
    while (end < text_.size() && is_digit(text_[end])) ++end;
    if (end == digits) throw SyntaxError(start, "expected integer exponent");
    if (end < text_.size() && (text_[end] == '.' || text_[end] == 'e' || text_[end] == 'E')) {
      throw SyntaxError(start, "exponent must be an integer");
    }
    int value = 0;
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end) {
      throw SyntaxError(start, "exponent out of range");
    }
    pos_ = end;
    return value;
  }

  NodePtr base() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '\0') throw SyntaxError(pos_, "unexpected end of input");
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (is_digit(c) || c == '.') return number();
    if (is_alpha(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && (is_alpha(text_[end]) || is_digit(text_[end]))) ++end;
      const std::string_view ident = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (ident == "u") {
        Node n;
        n.kind = Kind::Var;
        return make(std::move(n));
      }
      Func f;
      if (ident == "sin") f = Func::Sin;
      else if (ident == "cos") f = Func::Cos;
      else if (ident == "tan") f = Func::Tan;
      else if (ident == "exp") f = Func::Exp;
      else if (ident == "log") f = Func::Log;
      else if (ident == "sqrt") f = Func::Sqrt;
      else if (ident == "abs") f = Func::Abs;
      else throw SyntaxError(start, "unknown identifier '" + std::string(ident) + "'");
      if (peek() != '(') throw SyntaxError(pos_, "expected '(' after function name");
      ++pos_;
      Node n;
      n.kind = Kind::Call;
      n.func = f;
      n.lhs = expr();
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return make(std::move(n));
    }
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    std::size_t mantissa_digits = 0;
    while (end < text_.size() && is_digit(text_[end])) { ++end; ++mantissa_digits; }
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) { ++end; ++mantissa_digits; }
    }
    if (mantissa_digits == 0) throw SyntaxError(start, "malformed number");
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      const std::size_t exp_start = e;
      while (e < text_.size() && is_digit(text_[e])) ++e;
      if (e == exp_start) throw SyntaxError(end, "malformed exponent");
      end = e;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end || !std::isfinite(value)) {
      throw SyntaxError(start, "number out of range");
    }
    pos_ = end;
    Node n;
    n.kind = Kind::Number;
    n.number = value;
    return make(std::move(n));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Printing precedence: 1 sums, 2 products, 3 negation, 4 powers, 5 atoms.
int level(const Node& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Number: return n.number < 0.0 ? 0 : 5;
    default: return 5;
  }
}

void print_node(const Node& n, int min_level, std::string& out) {
  const bool paren = level(n) < min_level;
  if (paren) out += '(';
  switch (n.kind) {
    case Kind::Number: {
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, n.number);
      out.append(buf, res.ptr);
      break;
    }
    case Kind::Var: out += 'u'; break;
    case Kind::Neg:
      out += '-';
      print_node(*n.lhs, 4, out);
      break;
    case Kind::Add:
    case Kind::Sub:
      print_node(*n.lhs, 1, out);
      out += n.kind == Kind::Add ? '+' : '-';
      print_node(*n.rhs, 2, out);
      break;
    case Kind::Mul:
    case Kind::Div:
      print_node(*n.lhs, 2, out);
      out += n.kind == Kind::Mul ? '*' : '/';
      print_node(*n.rhs, 3, out);
      break;
    case Kind::Pow:
      print_node(*n.lhs, 5, out);
      out += '^';
      out += std::to_string(n.exponent);
      break;
    case Kind::Call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.lhs, 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

[[noreturn]] void singular(const char* what, double u) {
  throw Error(ErrorCode::Singular, std::string(what) + " at u = " + std::to_string(u));
}

Jet3 eval_node(const Node& n, double u) {
  switch (n.kind) {
    case Kind::Number: return Jet3::constant(n.number);
    case Kind::Var: return Jet3::variable(u);
    case Kind::Neg: return -eval_node(*n.lhs, u);
    case Kind::Add: return eval_node(*n.lhs, u) + eval_node(*n.rhs, u);
    case Kind::Sub: return eval_node(*n.lhs, u) - eval_node(*n.rhs, u);
    case Kind::Mul: return eval_node(*n.lhs, u) * eval_node(*n.rhs, u);
    case Kind::Div: {
      const Jet3 den = eval_node(*n.rhs, u);
      if (den.v0 == 0.0) singular("division by zero", u);
      return eval_node(*n.lhs, u) / den;
    }
    case Kind::Pow: {
      const Jet3 b = eval_node(*n.lhs, u);
      if (n.exponent < 0 && b.v0 == 0.0) singular("negative power of zero", u);
      return pow(b, n.exponent);
    }
    case Kind::Call: {
      const Jet3 a = eval_node(*n.lhs, u);
      switch (n.func) {
        case Func::Sin: return sin(a);
        case Func::Cos: return cos(a);
        case Func::Tan:
          if (std::cos(a.v0) == 0.0) singular("tan pole", u);
          return tan(a);
        case Func::Exp: return exp(a);
        case Func::Log:
          if (!(a.v0 > 0.0)) singular("log of non-positive value", u);
          return log(a);
        case Func::Sqrt:
          if (!(a.v0 > 0.0)) singular("sqrt of non-positive value", u);
          return sqrt(a);
        case Func::Abs:
          if (a.v0 == 0.0) singular("abs at its kink", u);
          return abs(a);
      }
    }
  }
  singular("malformed expression", u);
}

bool nonsmooth(const Node& n) {
  if (n.kind == Kind::Call &&
      (n.func == Func::Log || n.func == Func::Sqrt || n.func == Func::Abs)) {
    return true;
  }
  return (n.lhs && nonsmooth(*n.lhs)) || (n.rhs && nonsmooth(*n.rhs));
}

}  // namespace

bool Expr::maybe_nonsmooth() const { return nonsmooth(*root_); }

std::string Expr::print() const {
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

Jet3 Expr::eval(double u) const {
  const Jet3 j = eval_node(*root_, u);
  if (!isfinite(j)) singular("non-finite value", u);
  return j;
}

Expr parse(std::string_view text) { return Parser(text).run(); }

ScalarFn compile(const Expr& e, Interval domain) {
  return ScalarFn([e](double u) { return e.eval(u); }, domain, e.print());
}

ScalarFn compile(std::string_view text, Interval domain) {
  return compile(parse(text), domain);
}

}  // namespace rulekit::expr
