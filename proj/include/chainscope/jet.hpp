#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace chainscope {

/// First-order forward-mode jet: a value with a dense gradient over at most
/// kMaxVars independent variables. Used for exact gradients of Hamiltonians,
/// potentials and one-forms.
class Jet {
 public:
  static constexpr std::size_t kMaxVars = 8;

  constexpr Jet() = default;
  constexpr Jet(double v) : v_(v) {}  // NOLINT: implicit constant promotion

  static Jet variable(double v, std::size_t index, std::size_t nvars) {
    if (index >= nvars || nvars > kMaxVars) throw std::out_of_range("jet variable index out of range");
    Jet j(v);
    j.n_ = static_cast<std::uint8_t>(nvars);
    j.d_[index] = 1.0;
    return j;
  }

  double value() const { return v_; }
  double d(std::size_t i) const { return i < n_ ? d_[i] : 0.0; }
  std::size_t nvars() const { return n_; }

  Jet& operator+=(const Jet& o) {
    v_ += o.v_;
    widen(o.n_);
    for (std::size_t i = 0; i < o.n_; ++i) d_[i] += o.d_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v_ -= o.v_;
    widen(o.n_);
    for (std::size_t i = 0; i < o.n_; ++i) d_[i] -= o.d_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    widen(o.n_);
    for (std::size_t i = 0; i < n_; ++i) d_[i] = d_[i] * o.v_ + v_ * o.d_[i];
    v_ *= o.v_;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    widen(o.n_);
    const double inv = 1.0 / o.v_;
    const double q = v_ * inv;
    for (std::size_t i = 0; i < n_; ++i) d_[i] = (d_[i] - q * o.d_[i]) * inv;
    v_ = q;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator-(Jet a) {
    a.v_ = -a.v_;
    for (std::size_t i = 0; i < a.n_; ++i) a.d_[i] = -a.d_[i];
    return a;
  }

  /// Chain rule for a scalar function with value f and derivative df at v().
  Jet apply(double f, double df) const {
    Jet r(f);
    r.n_ = n_;
    for (std::size_t i = 0; i < n_; ++i) r.d_[i] = df * d_[i];
    return r;
  }

 private:
  void widen(std::uint8_t n) {
    if (n > n_) n_ = n;
  }

  double v_ = 0.0;
  std::array<double, kMaxVars> d_{};
  std::uint8_t n_ = 0;
};

inline Jet sin(const Jet& a) { return a.apply(std::sin(a.value()), std::cos(a.value())); }
inline Jet cos(const Jet& a) { return a.apply(std::cos(a.value()), -std::sin(a.value())); }
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return a.apply(e, e);
}
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.value());
  return a.apply(s, s > 0.0 ? 0.5 / s : 0.0);
}
inline Jet pow(const Jet& a, double p) {
  if (p == 0.0) return Jet(1.0);
  const double v = a.value();
  return a.apply(std::pow(v, p), p * std::pow(v, p - 1.0));
}
inline Jet square(const Jet& a) { return a * a; }
inline double square(double a) { return a * a; }

}  // namespace chainscope
