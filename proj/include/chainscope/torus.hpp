#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace chainscope {

inline constexpr std::size_t kMaxDims = 4;

struct TorusPoint {
  std::array<double, kMaxDims> c{};
  std::size_t n = 0;

  TorusPoint() = default;
  TorusPoint(std::initializer_list<double> xs);
  explicit TorusPoint(const std::vector<double>& xs);
  static TorusPoint zeros(std::size_t n);

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
  std::size_t size() const { return n; }
  std::vector<double> to_vector() const { return {c.begin(), c.begin() + n}; }

  friend bool operator==(const TorusPoint& a, const TorusPoint& b);
};

/// Flat torus R^n / (P_1 Z x ... x P_n Z).
class Torus {
 public:
  Torus() : Torus(1) {}
  explicit Torus(std::size_t dims, double period = 1.0);
  explicit Torus(std::vector<double> periods);

  std::size_t dims() const { return periods_.size(); }
  double period(std::size_t j) const { return periods_[j]; }
  const std::vector<double>& periods() const { return periods_; }

  TorusPoint reduce(TorusPoint x) const;
  double reduce_coord(double v, std::size_t j) const;
  /// Signed shortest displacement from a to b along axis j, in [-P/2, P/2].
  double delta(double a, double b, std::size_t j) const;

  bool operator==(const Torus& o) const { return periods_ == o.periods_; }

 private:
  std::vector<double> periods_;
};

double torus_distance(const TorusPoint& a, const TorusPoint& b, const Torus& t);

}  // namespace chainscope
