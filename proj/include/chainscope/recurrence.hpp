#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chainscope/chain_cost.hpp"

namespace chainscope {

enum class RecurrenceClass { scr, cr_only, non_recurrent };

std::string to_string(RecurrenceClass c);

struct Thresholds {
  double c_snap = kDefaultSnapConstant;
  /// Allowed ratio between loop costs at consecutive ladder levels.
  double ratio_max = 0.9;
  double step = 0.0;  // integration step, 0 = default
};

struct NodeRecurrence {
  std::size_t node = 0;  // index in the coarsest grid
  std::vector<double> loop_cost;        // sum-mode L_T(x,x) per level
  std::vector<std::size_t> loop_hops;   // hops of the optimal loop per level
  std::vector<double> bottleneck_cost;  // bottleneck loop cost per level
  std::vector<double> ratios;           // loop_cost[k+1] / loop_cost[k]
  RecurrenceClass cls = RecurrenceClass::non_recurrent;
};

struct RecurrenceReport {
  std::vector<GridSpec> ladder;
  double T = 0.0;
  Thresholds thresholds;
  std::vector<double> h;  // h_max per level
  std::vector<NodeRecurrence> nodes;

  std::vector<std::size_t> nodes_of(RecurrenceClass c) const;
};

/// Per-level pass rule shared by the SCR and CR tests: at every level
/// v_k <= c_snap h_k max(1, hops_k), and v_{k+1} <= ratio_max v_k + c_snap h_{k+1}.
bool refinement_test(const std::vector<double>& v, const std::vector<std::size_t>& hops,
                     const std::vector<double>& h, const Thresholds& th);

/// Classifies every node of the coarsest grid in the ladder.
RecurrenceReport scr_classify(const FlowSystem& sys, const std::vector<GridSpec>& ladder, double T,
                              const Thresholds& th = {});

/// Same, on prebuilt graphs (one per ladder level, all grid graphs).
RecurrenceReport scr_classify(const std::vector<const ChainGraph*>& graphs, const Thresholds& th = {});

/// Cost fields L_{T_k}(source, .) for ascending T_list. The graph for T_k uses
/// the union of the default flow times of every T_j >= T_k, so the chain sets
/// are nested and the fields are monotone in T on the grid.
std::vector<CostField> cost_monotonicity_probe(const FlowSystem& sys, const GridSpec& grid,
                                               std::size_t source, const std::vector<double>& T_list,
                                               double step = 0.0);

}  // namespace chainscope
