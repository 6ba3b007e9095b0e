#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chainscope/flow.hpp"

namespace chainscope {

/// H(x, y) on T^n x R^n, evaluated on jets so that d_xH and d_yH are exact.
using HamiltonianFn = std::function<Jet(const JetVec& x, const JetVec& y)>;

struct PhasePoint {
  TorusPoint x;
  TorusPoint y;
};

struct HamiltonianSystem {
  Torus torus;
  HamiltonianFn H;
  double energy_level = 0.0;
  std::string label;

  double value(const TorusPoint& x, const TorusPoint& y) const;
  /// Fills dx = d_xH, dy = d_yH at (x, y) and returns H.
  double gradients(const TorusPoint& x, const TorusPoint& y, TorusPoint& dx, TorusPoint& dy) const;
};

/// Lift a point to constant jets / seeded jets.
JetVec constant_jets(const TorusPoint& p);
JetVec seeded_jets(const TorusPoint& p, std::size_t offset, std::size_t nvars);

/// H(x, y) = 1/2 |y|^2 + y . Y(x), energy level 0. Y must carry a jet field.
HamiltonianSystem mane_hamiltonian(const FlowSystem& Y);

struct HamiltonianRun {
  PhasePoint end;           // x reduced to the torus
  double energy_drift = 0;  // |H(z_t) - H(z_0)|
  double max_energy_drift = 0;
};

/// Fixed-step RK4 for x' = d_yH, y' = -d_xH; the last partial step is exact.
HamiltonianRun integrate_hamiltonian(const HamiltonianSystem& sys, const PhasePoint& z0, double t,
                                     double step);

/// States at ascending nonnegative times along one trajectory (partial steps
/// branch off the step lattice, as for integrate_checkpoints).
std::vector<PhasePoint> hamiltonian_trajectory(const HamiltonianSystem& sys, const PhasePoint& z0,
                                               const std::vector<double>& times, double step);

}  // namespace chainscope
