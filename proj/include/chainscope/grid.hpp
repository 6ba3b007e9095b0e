#pragma once

#include <cstddef>
#include <vector>

#include "chainscope/torus.hpp"

namespace chainscope {

/// Regular grid on a torus; node i has multi-index (i_0, i_1, ...) with axis 0
/// varying fastest and coordinates i_j * h_j.
class GridSpec {
 public:
  GridSpec(Torus torus, std::vector<std::size_t> counts);

  const Torus& torus() const { return torus_; }
  std::size_t dims() const { return counts_.size(); }
  std::size_t count(std::size_t j) const { return counts_[j]; }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t size() const { return total_; }
  double spacing(std::size_t j) const { return torus_.period(j) / static_cast<double>(counts_[j]); }
  double h_max() const;

  TorusPoint point(std::size_t node) const;
  std::size_t index(const std::vector<std::size_t>& multi) const;
  std::vector<std::size_t> multi_index(std::size_t node) const;
  std::size_t nearest(const TorusPoint& x) const;
  /// Node reached by moving `step` cells along axis j (with wraparound).
  std::size_t shift(std::size_t node, std::size_t j, long long step) const;

  /// Optional restriction mask; empty means every node is active.
  void set_mask(std::vector<char> mask);
  bool active(std::size_t node) const { return mask_.empty() || mask_[node] != 0; }
  bool has_mask() const { return !mask_.empty(); }

  /// True if every node of `coarse` is a node of this grid.
  bool refines(const GridSpec& coarse) const;
  /// Index in this grid of a node of `coarse` (requires refines(coarse)).
  std::size_t embed(const GridSpec& coarse, std::size_t coarse_node) const;

 private:
  Torus torus_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 0;
  std::vector<char> mask_;
};

}  // namespace chainscope
