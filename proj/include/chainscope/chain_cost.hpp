#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "chainscope/chain_graph.hpp"

namespace chainscope {

enum class CostMode {
  sum,         // strong chains: total jump length
  bottleneck,  // ordinary chains: largest single jump
};

inline constexpr double kDefaultSnapConstant = 4.0;

struct CostOptions {
  CostMode mode = CostMode::sum;
  double c_snap = kDefaultSnapConstant;
  /// Stop as soon as this node is settled (values elsewhere are then partial).
  std::optional<std::size_t> stop_at;
  /// Sum mode on grid graphs: also relax grid-adjacent nodes with weight equal
  /// to their distance (moving the final jump's landing point).
  bool lipschitz_edges = true;
};

/// Approximation of L_T(source, .) on the graph nodes. values[source] is the
/// cheapest loop cost, since every chain has at least one step.
struct CostField {
  std::size_t source = 0;
  double T = 0.0;
  CostMode mode = CostMode::sum;
  std::vector<double> values;
  std::vector<std::size_t> hops;  // jumps on the optimal path
  double h = 0.0;
  double r_jump = 0.0;
  std::vector<double> flow_times;
  double c_snap = kDefaultSnapConstant;

  /// Snap slack c_snap * h * max(1, hops[node]).
  double tau(std::size_t node) const;
  /// Single-hop slack c_snap * h.
  double tau() const { return c_snap * h; }
};

CostField chain_cost(const ChainGraph& g, std::size_t source, const CostOptions& opts = {});

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace chainscope
