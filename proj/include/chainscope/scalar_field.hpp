#pragma once

#include <functional>
#include <vector>

#include "chainscope/grid.hpp"

namespace chainscope {

/// Grid-sampled function with periodic multilinear interpolation.
class ScalarField {
 public:
  ScalarField(GridSpec grid, std::vector<double> values);

  static ScalarField sample(const GridSpec& grid, const std::function<double(const TorusPoint&)>& f);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t node) const { return values_[node]; }

  double interpolate(const TorusPoint& x) const;
  /// Largest |difference| / distance over grid-adjacent node pairs.
  double lipschitz_estimate() const;
  double min() const;
  double max() const;
  double range() const { return max() - min(); }

  ScalarField negated() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

}  // namespace chainscope
