#include <doctest.h>

#include <cmath>

#include "chainscope/catalog.hpp"
#include "chainscope/chain_graph.hpp"
#include "chainscope/lyapunov.hpp"

using namespace chainscope;

TEST_CASE("explicit Cantor function is a strict Lyapunov function") {
  const CantorSpec spec = CantorSpec::fat(0.25, 10);
  const FlowSystem sys = build_cantor_flow(spec);
  const ExplicitCantorLyapunov h(spec);
  CHECK(h(0.0) == doctest::Approx(0.0));
  CHECK(h(1.0 - 1e-12) == doctest::Approx(0.0).epsilon(1e-6));
  VerifyOptions o;
  o.n_random = 200;
  o.neutral_set = false;
  const auto v = verify_lyapunov([&h](const TorusPoint& x) { return h(x[0]); }, GridSpec(sys.torus, {1024}), sys, o);
  CHECK(v.is_lyapunov);
  CHECK_FALSE(v.is_first_integral);
  const ScalarField f = explicit_cantor_lyapunov(spec, GridSpec(sys.torus, {1024}));
  CHECK(f.lipschitz_estimate() <= h.lipschitz_bound() + 1e-6);
}

TEST_CASE("synthesized field on the gradient circle") {
  const CatalogSystem cs = load_system("gradient-circle");
  const GridSpec grid(cs.flow.torus, {512});
  // Short horizon: Lip = 2 pi, so snap errors grow like exp(2 pi * 3T).
  const ChainGraph g = build_chain_graph(cs.flow, grid, 0.25);
  const SynthResult syn = synth_lyapunov(g, cs.flow, 0, 0.25);
  VerifyOptions o;
  o.n_random = 300;
  o.tol = 2.0 * syn.tau_hop;
  const auto v = verify_lyapunov(syn.h, cs.flow, o);
  CHECK(v.is_lyapunov);
  CHECK_FALSE(v.is_constant);
  // The fixed points 0 and 1/2 are neutral.
  bool zero = false, half = false;
  for (auto u : v.neutral_set_nodes) {
    zero = zero || u == 0;
    half = half || u == 256;
  }
  CHECK(zero);
  CHECK(half);
}

TEST_CASE("rotation: synthesized field is constant") {
  const CatalogSystem cs = load_system("rotation");
  const GridSpec grid(cs.flow.torus, {32, 32});
  const ChainGraph g = build_chain_graph(cs.flow, grid, 1.0);
  const SynthResult syn = synth_lyapunov(g, cs.flow, 0, 1.0);
  VerifyOptions o;
  o.n_random = 100;
  o.tol = 2.0 * syn.tau_hop;
  const auto v = verify_lyapunov(syn.h, cs.flow, o);
  CHECK(v.is_lyapunov);
  CHECK(v.range <= 2.0 * syn.tau_hop);
}

TEST_CASE("an increasing function is rejected") {
  const CatalogSystem cs = load_system("rotation");
  VerifyOptions o;
  o.n_random = 50;
  o.neutral_set = false;
  const auto v = verify_lyapunov([](const TorusPoint& x) { return std::sin(2.0 * 3.141592653589793 * x[0]); },
                                 GridSpec(cs.flow.torus, {16, 16}), cs.flow, o);
  CHECK_FALSE(v.is_lyapunov);
  CHECK(v.max_increase > 0.1);
}
