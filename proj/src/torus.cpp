#include "chainscope/torus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chainscope/errors.hpp"

namespace chainscope {

TorusPoint::TorusPoint(std::initializer_list<double> xs) {
  if (xs.size() > kMaxDims) throw InputError("torus point has too many coordinates");
  n = xs.size();
  std::copy(xs.begin(), xs.end(), c.begin());
}

TorusPoint::TorusPoint(const std::vector<double>& xs) {
  if (xs.size() > kMaxDims) throw InputError("torus point has too many coordinates");
  n = xs.size();
  std::copy(xs.begin(), xs.end(), c.begin());
}

TorusPoint TorusPoint::zeros(std::size_t n) {
  if (n > kMaxDims) throw InputError("torus point has too many coordinates");
  TorusPoint p;
  p.n = n;
  return p;
}

bool operator==(const TorusPoint& a, const TorusPoint& b) {
  if (a.n != b.n) return false;
  for (std::size_t i = 0; i < a.n; ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

Torus::Torus(std::size_t dims, double period) : Torus(std::vector<double>(dims, period)) {}

Torus::Torus(std::vector<double> periods) : periods_(std::move(periods)) {
  if (periods_.empty() || periods_.size() > kMaxDims)
    throw ConfigError("torus dimension must be between 1 and " + std::to_string(kMaxDims));
  for (double p : periods_)
    if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("torus periods must be positive and finite");
}

double Torus::reduce_coord(double v, std::size_t j) const {
  const double p = periods_[j];
  double r = std::fmod(v, p);
  if (r < 0.0) r += p;
  // fmod of a tiny negative value can round up to p itself.
  if (r >= p) r = 0.0;
  return r;
}

TorusPoint Torus::reduce(TorusPoint x) const {
  if (x.n != dims()) throw InputError("point dimension does not match torus");
  for (std::size_t j = 0; j < x.n; ++j) x.c[j] = reduce_coord(x.c[j], j);
  return x;
}

double Torus::delta(double a, double b, std::size_t j) const {
  const double p = periods_[j];
  double d = std::fmod(b - a, p);
  if (d > 0.5 * p) d -= p;
  else if (d < -0.5 * p) d += p;
  return d;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b, const Torus& t) {
  if (a.n != t.dims() || b.n != t.dims()) throw InputError("dimension mismatch in torus_distance");
  double s = 0.0;
  for (std::size_t j = 0; j < a.n; ++j) {
    const double p = t.period(j);
    double d = std::fabs(std::fmod(a.c[j] - b.c[j], p));
    d = std::min(d, p - d);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace chainscope
