#include "chainscope/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>

#include "chainscope/errors.hpp"

namespace chainscope {

namespace {

using Node = Expression::Node;
using Op = Expression::Op;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0, int var = 0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  n->var = var;
  return n;
}

bool is_constant(const Node& n) {
  if (n.op == Op::var) return false;
  if (n.a && !is_constant(*n.a)) return false;
  if (n.b && !is_constant(*n.b)) return false;
  return true;
}

class Parser {
 public:
  Parser(const std::string& s, std::size_t dims, bool allow_y, bool allow_r)
      : s_(s), dims_(dims), allow_y_(allow_y), allow_r_(allow_r) {}

  NodePtr run() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  bool used_y = false;
  bool used_r = false;

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression \"" + s_ + "\": " + msg + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::add, lhs, term());
      else if (accept('-')) lhs = make(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      NodePtr ex = unary();
      if (!is_constant(*ex)) fail("exponent must be constant");
      return make(Op::pow, base, nullptr, evaluate_constant(*ex));
    }
    return base;
  }

  static double evaluate_constant(const Node& n) {
    switch (n.op) {
      case Op::num: return n.value;
      case Op::add: return evaluate_constant(*n.a) + evaluate_constant(*n.b);
      case Op::sub: return evaluate_constant(*n.a) - evaluate_constant(*n.b);
      case Op::mul: return evaluate_constant(*n.a) * evaluate_constant(*n.b);
      case Op::div: return evaluate_constant(*n.a) / evaluate_constant(*n.b);
      case Op::neg: return -evaluate_constant(*n.a);
      case Op::pow: return std::pow(evaluate_constant(*n.a), n.value);
      case Op::sin: return std::sin(evaluate_constant(*n.a));
      case Op::cos: return std::cos(evaluate_constant(*n.a));
      case Op::exp: return std::exp(evaluate_constant(*n.a));
      case Op::sqrt: return std::sqrt(evaluate_constant(*n.a));
      case Op::var: break;
    }
    return 0.0;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Op::num, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "pi") return make(Op::num, nullptr, nullptr, std::numbers::pi);
      if (id == "e") return make(Op::num, nullptr, nullptr, std::numbers::e);
      if (id == "r") {
        if (!allow_r_) fail("variable r not allowed here");
        used_r = true;
        return make(Op::var, nullptr, nullptr, 0.0, 8);
      }
      if ((id[0] == 'x' || id[0] == 'y') && id.size() == 2 && id[1] >= '1' && id[1] <= '9') {
        const auto k = static_cast<std::size_t>(id[1] - '1');
        if (k >= dims_) fail("variable " + id + " exceeds dimension " + std::to_string(dims_));
        if (id[0] == 'y') {
          if (!allow_y_) fail("momentum variable " + id + " not allowed here");
          used_y = true;
          return make(Op::var, nullptr, nullptr, 0.0, 4 + static_cast<int>(k));
        }
        return make(Op::var, nullptr, nullptr, 0.0, static_cast<int>(k));
      }
      Op f;
      if (id == "sin") f = Op::sin;
      else if (id == "cos") f = Op::cos;
      else if (id == "exp") f = Op::exp;
      else if (id == "sqrt") f = Op::sqrt;
      else fail("unknown identifier '" + id + "'");
      if (!accept('(')) fail("expected '(' after " + id);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make(f, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t dims_;
  bool allow_y_, allow_r_;
};

}  // namespace

Expression Expression::parse(const std::string& text, std::size_t dims, bool allow_y, bool allow_r) {
  if (dims == 0 || dims > kMaxDims) throw ConfigError("expression dimension out of range");
  Parser p(text, dims, allow_y, allow_r);
  Expression e;
  e.root_ = p.run();
  e.text_ = text;
  e.uses_y_ = p.used_y;
  e.uses_r_ = p.used_r;
  return e;
}

namespace {

NodePtr num(double v) { return make(Op::num, nullptr, nullptr, v); }

NodePtr diff(const NodePtr& n, int var) {
  switch (n->op) {
    case Op::num: return num(0.0);
    case Op::var: return num(n->var == var ? 1.0 : 0.0);
    case Op::add: return make(Op::add, diff(n->a, var), diff(n->b, var));
    case Op::sub: return make(Op::sub, diff(n->a, var), diff(n->b, var));
    case Op::mul:
      return make(Op::add, make(Op::mul, diff(n->a, var), n->b), make(Op::mul, n->a, diff(n->b, var)));
    case Op::div:
      return make(Op::div,
                  make(Op::sub, make(Op::mul, diff(n->a, var), n->b), make(Op::mul, n->a, diff(n->b, var))),
                  make(Op::pow, n->b, nullptr, 2.0));
    case Op::neg: return make(Op::neg, diff(n->a, var));
    case Op::pow:
      if (n->value == 0.0) return num(0.0);
      return make(Op::mul, make(Op::mul, num(n->value), make(Op::pow, n->a, nullptr, n->value - 1.0)),
                  diff(n->a, var));
    case Op::sin: return make(Op::mul, make(Op::cos, n->a), diff(n->a, var));
    case Op::cos: return make(Op::neg, make(Op::mul, make(Op::sin, n->a), diff(n->a, var)));
    case Op::exp: return make(Op::mul, make(Op::exp, n->a), diff(n->a, var));
    case Op::sqrt:
      return make(Op::div, diff(n->a, var), make(Op::mul, num(2.0), make(Op::sqrt, n->a)));
  }
  return num(0.0);
}

}  // namespace

Expression Expression::derivative_x(std::size_t j) const {
  if (!root_) throw InputError("derivative of an empty expression");
  if (j >= kMaxDims) throw InputError("derivative index out of range");
  Expression d;
  d.root_ = diff(root_, static_cast<int>(j));
  d.text_ = "d/dx" + std::to_string(j + 1) + "(" + text_ + ")";
  d.uses_y_ = uses_y_;
  d.uses_r_ = uses_r_;
  return d;
}

double Expression::eval_x(const TorusPoint& x, double r) const {
  Bindings<double> b;
  for (std::size_t j = 0; j < x.n; ++j) b.x[j] = x[j];
  b.r = r;
  return eval(b);
}

}  // namespace chainscope
