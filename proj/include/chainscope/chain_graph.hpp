#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chainscope/flow.hpp"
#include "chainscope/grid.hpp"

namespace chainscope {

struct Edge {
  std::uint32_t target = 0;
  double weight = 0.0;
};

/// Discretized strong-chain transition structure in CSR form. An arc u -> w
/// with weight d means: flow from u for one of the flow times, then jump a
/// distance d to w.
class ChainGraph {
 public:
  struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    double weight = 0.0;
  };

  /// Hand-built graph without an underlying grid.
  ChainGraph(std::size_t nodes, const std::vector<Arc>& arcs);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge* begin(std::size_t u) const { return edges_.data() + offsets_[u]; }
  const Edge* end(std::size_t u) const { return edges_.data() + offsets_[u + 1]; }

  const std::optional<GridSpec>& grid() const { return grid_; }
  double T() const { return T_; }
  const std::vector<double>& flow_times() const { return flow_times_; }
  double r_jump() const { return r_jump_; }
  double h() const { return grid_ ? grid_->h_max() : 0.0; }
  std::size_t forced_snaps() const { return forced_snaps_; }

  /// Reduced flow endpoints psi_t(u) per node and flow time (grid graphs only).
  const TorusPoint& endpoint(std::size_t u, std::size_t k) const {
    return endpoints_[u * flow_times_.size() + k];
  }

 private:
  ChainGraph() = default;
  friend ChainGraph build_chain_graph(const FlowSystem&, const GridSpec&, double,
                                      const std::vector<double>&, double, double);

  std::optional<GridSpec> grid_;
  double T_ = 0.0;
  std::vector<double> flow_times_;
  double r_jump_ = 0.0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Edge> edges_;
  std::vector<TorusPoint> endpoints_;
  std::size_t forced_snaps_ = 0;
};

/// {T, 1.5T, 2T, 3T}
std::vector<double> default_flow_times(double T);

/// Builds the chain graph. flow_times empty selects the default set; r_jump <= 0
/// selects 3 h_max; step <= 0 selects default_step(sys).
ChainGraph build_chain_graph(const FlowSystem& sys, const GridSpec& grid, double T,
                             const std::vector<double>& flow_times = {}, double r_jump = 0.0,
                             double step = 0.0);

}  // namespace chainscope
