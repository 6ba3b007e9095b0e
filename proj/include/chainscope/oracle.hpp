#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "chainscope/cantor.hpp"
#include "chainscope/chain_graph.hpp"

namespace chainscope::oracle {

/// Finite analogue of a flow: explicit pairwise distances and a successor
/// map playing the role of psi_T.
struct FiniteChainSystem {
  std::size_t n = 0;
  std::vector<double> dist;  // row-major n x n
  std::vector<std::size_t> successor;
  std::size_t max_len = 0;  // chain length cap (steps)

  double d(std::size_t a, std::size_t b) const { return dist[a * n + b]; }

  /// Throws InputError unless dist is a metric (triangle inequality checked
  /// up to a relative 1e-12 to absorb rounding of the coordinates' norms).
  void check_metric() const;

  /// Complete graph with arcs u -> w of weight d(successor(u), w).
  ChainGraph induced_graph() const;

  /// n points uniform in the unit square (Euclidean metric), random successors.
  /// Some successors are fixed points. max_len defaults to n.
  static FiniteChainSystem random(std::size_t n, std::mt19937_64& rng);
};

/// Exact minimum of sum d(succ(x_i), x_{i+1}) over chains x = x_1, ..., x_k = y
/// with 1 <= k - 1 <= max_len steps whose intermediate points are distinct and
/// differ from x. With prune, branches whose prefix already exceeds every
/// current best are cut (exact: prefixes only grow).
double brute_chain_cost(const FiniteChainSystem& sys, std::size_t x, std::size_t y, bool prune = true);

/// All targets at once; same enumeration.
std::vector<double> brute_chain_costs(const FiniteChainSystem& sys, std::size_t x, bool prune = true);

/// Minimum over all walks (revisits allowed) with at most `steps` steps.
std::vector<double> walk_costs(const FiniteChainSystem& sys, std::size_t x, std::size_t steps);

/// mu(K): the total jump any loop based outside K must spend (0 for null specs,
/// whose zero set is finite).
double cantor_loop_bound(const CantorSpec& spec);

/// psi_t(x) - x for the Cantor flow with exponent 1, from the closed-form
/// solution in each gap (exponential near the gap ends, unit speed between).
double cantor_flow_displacement(const CantorProfile& prof, double x, double t);

/// Continuum loop cost L_T(x, x) = min(psi_T(x) - x, mu(K)) for x outside K
/// (a backward jump closes the loop with winding 0); 0 on K.
double cantor_loop_cost(const CantorProfile& prof, double mu, double x, double T);

}  // namespace chainscope::oracle
