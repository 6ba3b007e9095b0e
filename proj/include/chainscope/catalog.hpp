#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainscope/cantor.hpp"
#include "chainscope/config.hpp"
#include "chainscope/expression.hpp"
#include "chainscope/hamiltonian.hpp"

namespace chainscope {

struct CatalogSystem {
  std::string label;
  /// The flow to analyze. For Hamiltonian entries this is the reduced field
  /// Y(x) = d_yH(x, 0) on the invariant zero section.
  FlowSystem flow;
  std::optional<HamiltonianSystem> hamiltonian;
  std::optional<CantorSpec> cantor;
  std::optional<CantorFlowOptions> cantor_options;
  /// Default grid counts per axis for analysis.
  std::vector<std::size_t> default_grid;
  /// Known to be strongly chain transitive (used by the constancy checks).
  bool transitive = false;
  std::string description;
};

std::vector<std::string> catalog_labels();

/// Builds a catalog entry. Parameters (all optional):
///   cantor-fat:      delta, depth, gain, exponent
///   cantor-null:     depth, gain, exponent
///   rotation:        alpha1, alpha2
///   gradient-circle: (none)
///   mane:            Y1, Y2 (expressions in x1, x2)
///   pps-example:     period (default 2*pi)
///   outer-example:   (none)
///   outer-x1, pps-x1: one-dimensional x1-subsystems of the two examples
///   flow:            dims, period, V1..Vn (expressions)
///   hamiltonian:     dims, period, H (expression in x1..xn, y1..yn)
CatalogSystem load_system(const std::string& label, const Config& params = {});

/// Flow from component expressions, with both plain and jet evaluators.
FlowSystem expression_flow(const Torus& t, const std::vector<Expression>& comps, std::string label,
                           std::optional<double> lipschitz = std::nullopt);

/// Hamiltonian from an expression in x1..xn, y1..yn.
HamiltonianSystem expression_hamiltonian(const Torus& t, const Expression& H, std::string label);

/// f(x) = dist(x, [1/3, 2/3])^2 on R/Z (zero exactly on the band).
Jet outer_f(const Jet& x);
double outer_f(double x);

/// Periodic profile with g' = -f off [1/3, 2/3]; u_r = r g is an admissible
/// deformation of the zero section for the outer example.
Jet outer_g(const Jet& x);
double outer_g(double x);

}  // namespace chainscope
