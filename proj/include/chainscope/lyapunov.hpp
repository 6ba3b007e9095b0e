#pragma once

#include <cstdint>
#include <vector>

#include "chainscope/cantor.hpp"
#include "chainscope/chain_cost.hpp"
#include "chainscope/scalar_field.hpp"

namespace chainscope {

struct LyapunovVerdict {
  bool is_lyapunov = false;
  bool is_first_integral = false;
  bool is_constant = false;
  double max_increase = 0.0;  // worst h(psi_t y) - h(y)
  double max_drift = 0.0;     // worst |h(psi_t y) - h(y)|
  double max_dhV = 0.0;       // largest finite-difference dh.V at smooth nodes
  std::size_t dhV_nodes = 0;  // nodes used for dh.V
  double range = 0.0;
  std::vector<std::size_t> neutral_set_nodes;
  double tol = 0.0;
  double neutral_tol = 0.0;
};

struct VerifyOptions {
  std::vector<double> t_probe;      // empty: {T/4, T/2, T, 2T, 5T} with T = 1
  std::vector<TorusPoint> samples;  // empty: n_random uniform samples
  std::size_t n_random = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double step = 0.0;
  bool neutral_set = true;  // scan every grid node for the neutral set
};

/// h~(y) = L_T(base, y) from the sum-cost field of the graph.
ScalarField synth_tilde(const ChainGraph& g, std::size_t base);

struct SynthResult {
  ScalarField tilde;
  ScalarField h;
  CostField cost;
  /// c_snap * h * max(1, hops) maximized over the field.
  double tau_field = 0.0;
  /// c_snap * h (single hop).
  double tau_hop = 0.0;
  /// Lip(h~) * Lip(psi) * T / (n_samples - 1), the sampling error bound of the max.
  double sampling_error = 0.0;
};

/// h(y) = max over s in {0, T/(n-1), ..., T} of the interpolated h~(psi_s y).
SynthResult synth_lyapunov(const ChainGraph& g, const FlowSystem& sys, std::size_t base, double T,
                           std::size_t n_samples = 65, double step = 0.0);

LyapunovVerdict verify_lyapunov(const ScalarField& h, const FlowSystem& sys, const VerifyOptions& opts);

/// Same checks for a function given by an evaluator; `grid` supplies the nodes
/// for the neutral set, the constancy range and the dh.V stencil.
LyapunovVerdict verify_lyapunov(const std::function<double(const TorusPoint&)>& h, const GridSpec& grid,
                                const FlowSystem& sys, const VerifyOptions& opts);

/// h(x) = (1/delta) |K cap [0,x]| - (1/(1-delta)) |K^c cap [0,x]| on the grid,
/// evaluated exactly from the interval list. For null specs the level-depth
/// approximant with delta_d = (2/3)^depth is used.
ScalarField explicit_cantor_lyapunov(const CantorSpec& spec, const GridSpec& grid);

/// Exact evaluator of the same function at arbitrary points.
class ExplicitCantorLyapunov {
 public:
  explicit ExplicitCantorLyapunov(const CantorSpec& spec);
  double operator()(double x) const;
  double delta() const { return delta_; }
  /// 1/delta + 1/(1-delta)
  double lipschitz_bound() const { return 1.0 / delta_ + 1.0 / (1.0 - delta_); }

 private:
  double measure_below(double x) const;

  std::vector<Interval> pieces_;
  std::vector<double> prefix_;
  double delta_ = 0.0;
};

}  // namespace chainscope
