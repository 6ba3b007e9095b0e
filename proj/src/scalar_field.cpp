#include "chainscope/scalar_field.hpp"

#include <algorithm>
#include <cmath>

#include "chainscope/errors.hpp"

namespace chainscope {

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InputError("field size does not match grid");
}

ScalarField ScalarField::sample(const GridSpec& grid, const std::function<double(const TorusPoint&)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.point(i));
  return ScalarField(grid, std::move(v));
}

double ScalarField::interpolate(const TorusPoint& x) const {
  const std::size_t n = grid_.dims();
  if (x.n != n) throw InputError("point dimension does not match field");
  std::array<std::size_t, kMaxDims> base{};
  std::array<double, kMaxDims> frac{};
  std::vector<std::size_t> multi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = grid_.torus().reduce_coord(x[j], j) / grid_.spacing(j);
    double fl = std::floor(u);
    double fr = u - fl;
    // Points that are nodes up to round-off snap onto the node.
    if (fr > 1.0 - 1e-12) {
      fl += 1.0;
      fr = 0.0;
    } else if (fr < 1e-12) {
      fr = 0.0;
    }
    auto i = static_cast<std::size_t>(fl);
    if (i >= grid_.count(j)) {
      i = 0;
      fr = 0.0;
    }
    base[j] = i;
    frac[j] = fr;
  }
  double acc = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner) {
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool up = (corner >> j) & 1U;
      if (up) {
        w *= frac[j];
        multi[j] = (base[j] + 1) % grid_.count(j);
      } else {
        w *= 1.0 - frac[j];
        multi[j] = base[j];
      }
    }
    if (w == 0.0) continue;
    acc += w * values_[grid_.index(multi)];
  }
  if (!std::isfinite(acc)) throw NumericError("non-finite interpolated value", x.to_vector());
  return acc;
}

double ScalarField::lipschitz_estimate() const {
  double L = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    for (std::size_t j = 0; j < grid_.dims(); ++j) {
      const std::size_t k = grid_.shift(i, j, 1);
      if (k == i) continue;
      const double d = std::fabs(values_[k] - values_[i]);
      if (std::isfinite(d)) L = std::max(L, d / grid_.spacing(j));
    }
  }
  return L;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

ScalarField ScalarField::negated() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return ScalarField(grid_, std::move(v));
}

}  // namespace chainscope
