#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "chainscope/jet.hpp"
#include "chainscope/torus.hpp"

namespace chainscope {

/// Small arithmetic language for potentials, fields and Hamiltonians.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          exponent must be constant
///   primary := number | 'pi' | 'e' | var | func '(' expr ')' | '(' expr ')'
///   var     := x1..x4 | y1..y4 | r
///   func    := sin | cos | exp | sqrt
class Expression {
 public:
  enum class Op { num, var, add, sub, mul, div, neg, pow, sin, cos, exp, sqrt };

  struct Node {
    Op op = Op::num;
    double value = 0.0;  // num: constant, pow: exponent
    int var = 0;         // 0..3 x, 4..7 y, 8 r
    std::shared_ptr<const Node> a, b;
  };

  template <class T>
  struct Bindings {
    std::array<T, kMaxDims> x{};
    std::array<T, kMaxDims> y{};
    T r{};
  };

  Expression() = default;

  /// Throws ConfigError on syntax errors or variables outside x1..x{dims}
  /// (y-variables only when allow_y, r only when allow_r).
  static Expression parse(const std::string& text, std::size_t dims, bool allow_y = false,
                          bool allow_r = false);

  const std::string& text() const { return text_; }
  bool uses_y() const { return uses_y_; }
  bool uses_r() const { return uses_r_; }
  bool empty() const { return !root_; }

  template <class T>
  T eval(const Bindings<T>& b) const {
    return eval_node<T>(*root_, b);
  }

  double eval_x(const TorusPoint& x, double r = 0.0) const;

  /// Symbolic partial derivative with respect to x_{j+1}.
  Expression derivative_x(std::size_t j) const;

 private:
  template <class T>
  static T eval_node(const Node& n, const Bindings<T>& b) {
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    switch (n.op) {
      case Op::num: return T(n.value);
      case Op::var:
        if (n.var < 4) return b.x[n.var];
        if (n.var < 8) return b.y[n.var - 4];
        return b.r;
      case Op::add: return eval_node(*n.a, b) + eval_node(*n.b, b);
      case Op::sub: return eval_node(*n.a, b) - eval_node(*n.b, b);
      case Op::mul: return eval_node(*n.a, b) * eval_node(*n.b, b);
      case Op::div: return eval_node(*n.a, b) / eval_node(*n.b, b);
      case Op::neg: return -eval_node(*n.a, b);
      case Op::pow: return power(eval_node(*n.a, b), n.value);
      case Op::sin: return sin(eval_node(*n.a, b));
      case Op::cos: return cos(eval_node(*n.a, b));
      case Op::exp: return exp(eval_node(*n.a, b));
      case Op::sqrt: return sqrt(eval_node(*n.a, b));
    }
    return T(0.0);
  }

  template <class T>
  static T power(const T& base, double p) {
    // Small integer exponents by repeated multiplication (exact sign handling).
    if (p == std::floor(p) && std::fabs(p) <= 16.0) {
      T acc(1.0);
      const int k = static_cast<int>(std::fabs(p));
      for (int i = 0; i < k; ++i) acc = acc * base;
      return p < 0 ? T(1.0) / acc : acc;
    }
    using std::pow;
    return pow(base, p);
  }

  std::string text_;
  std::shared_ptr<const Node> root_;
  bool uses_y_ = false;
  bool uses_r_ = false;
};

}  // namespace chainscope
