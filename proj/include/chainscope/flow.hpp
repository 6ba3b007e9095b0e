#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chainscope/jet.hpp"
#include "chainscope/torus.hpp"

namespace chainscope {

using VectorField = std::function<TorusPoint(const TorusPoint&)>;
using JetVec = std::array<Jet, kMaxDims>;
/// Same field evaluated on jets; optional, needed where derivatives of V are used.
using JetVectorField = std::function<JetVec(const JetVec&)>;

struct FlowSystem {
  Torus torus;
  VectorField field;
  std::optional<double> lipschitz_bound;
  std::string label;
  JetVectorField jet_field;

  TorusPoint eval(const TorusPoint& x) const;
};

inline constexpr double kMaxStep = 1e-3;

/// min(kMaxStep, 0.1 / Lip) when a Lipschitz bound is known.
double default_step(const FlowSystem& sys);

/// Fixed-step RK4 for x' = V(x) in lifted (unreduced) coordinates.
/// Negative t integrates -V. The last partial step is taken exactly.
TorusPoint integrate_lifted(const FlowSystem& sys, TorusPoint x0, double t, double step);

TorusPoint integrate(const FlowSystem& sys, const TorusPoint& x0, double t, double step);

/// Reduced endpoints at each of the ascending nonnegative times. Each result is
/// bit-identical to integrate(sys, x0, times[k], step): the shared trajectory
/// stays on the step lattice and each checkpoint branches off with its own
/// partial step.
std::vector<TorusPoint> integrate_checkpoints(const FlowSystem& sys, const TorusPoint& x0,
                                              const std::vector<double>& times, double step,
                                              bool lifted = false);

/// Checks V(x) = V(x + P_j e_j) on the given samples; returns max deviation.
double periodicity_defect(const FlowSystem& sys, const std::vector<TorusPoint>& samples);

}  // namespace chainscope
