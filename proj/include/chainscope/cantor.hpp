#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chainscope/flow.hpp"

namespace chainscope {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

enum class CantorKind { fat, null };

/// Finite-depth Cantor construction on [0,1).
///   fat:  Smith-Volterra-Cantor; level k removes a centered interval of length
///         a*4^-k from each remaining piece, with a chosen so that the depth-d
///         approximant has measure exactly target_measure.
///   null: middle thirds; the flow's zero set is the endpoint set of K_d.
struct CantorSpec {
  CantorKind kind = CantorKind::fat;
  double target_measure = 0.25;
  std::size_t depth = 12;
  std::vector<std::vector<Interval>> removed;  // per level, sorted

  static CantorSpec fat(double delta, std::size_t depth = 12);
  static CantorSpec null(std::size_t depth = 4);

  double removal_scale() const;  // the constant a for fat specs
  /// Closed pieces of the depth-d approximant K_d, sorted.
  std::vector<Interval> pieces() const;
  /// Zero set of the associated flow, as sorted closed intervals (points for null).
  std::vector<Interval> zero_set() const;
  /// All interval endpoints appearing in the construction.
  std::vector<double> endpoints() const;
  double measure() const;  // Lebesgue measure of K_d
  double removed_length() const;
};

/// phi(x) = min(1, gain * dist(x, Z))^exponent, Z the zero set of the spec.
struct CantorFlowOptions {
  double gain = 4.0;
  double exponent = 1.0;
};

class CantorProfile {
 public:
  CantorProfile(const CantorSpec& spec, CantorFlowOptions opts);

  double dist(double x) const;  // circle distance from x to the zero set
  double phi(double x) const;
  const std::vector<Interval>& zero_set() const { return zero_; }
  const CantorFlowOptions& options() const { return opts_; }

  /// The open gap containing x, in lifted coordinates (lo < x < hi), or
  /// {x, x} when x lies in the zero set.
  Interval gap_containing(double x) const;

 private:
  std::vector<Interval> zero_;
  CantorFlowOptions opts_;
};

FlowSystem build_cantor_flow(const CantorSpec& spec, CantorFlowOptions opts = {});

}  // namespace chainscope
