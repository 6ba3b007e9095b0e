#include <doctest.h>

#include <cmath>
#include <random>

#include "chainscope/catalog.hpp"
#include "chainscope/chain_cost.hpp"
#include "chainscope/chain_graph.hpp"
#include "chainscope/oracle.hpp"
#include "chainscope/parallel.hpp"
#include "chainscope/recurrence.hpp"

using namespace chainscope;

TEST_CASE("hand-built graph: sum and bottleneck costs") {
  // 0 -> 1 (0.3), 1 -> 2 (0.2), 0 -> 2 (0.6), 2 -> 0 (0.1)
  const ChainGraph g(3, {{0, 1, 0.3}, {1, 2, 0.2}, {0, 2, 0.6}, {2, 0, 0.1}});
  const CostField s = chain_cost(g, 0);
  CHECK(s.values[1] == doctest::Approx(0.3));
  CHECK(s.values[2] == doctest::Approx(0.5));
  CHECK(s.values[0] == doctest::Approx(0.6));  // cheapest loop
  CHECK(s.hops[2] == 2);
  CostOptions bo;
  bo.mode = CostMode::bottleneck;
  const CostField b = chain_cost(g, 0, bo);
  CHECK(b.values[2] == doctest::Approx(0.3));
  CHECK(b.values[0] == doctest::Approx(0.3));
}

TEST_CASE("unreachable nodes stay infinite") {
  const ChainGraph g(3, {{0, 1, 0.5}});
  const CostField f = chain_cost(g, 0);
  CHECK(std::isinf(f.values[2]));
  CHECK(std::isinf(f.values[0]));
}

TEST_CASE("chain cost matches exhaustive enumeration") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    const auto sys = oracle::FiniteChainSystem::random(2 + rng() % 9, rng);
    sys.check_metric();
    const ChainGraph g = sys.induced_graph();
    for (std::size_t x = 0; x < sys.n; ++x) CHECK(chain_cost(g, x).values == oracle::brute_chain_costs(sys, x));
  }
}

TEST_CASE("revisits never help beyond the enumeration cap") {
  std::mt19937_64 rng(78);
  const auto sys = oracle::FiniteChainSystem::random(4, rng);
  const auto capped = oracle::brute_chain_costs(sys, 0);
  const auto walks = oracle::walk_costs(sys, 0, 2 * sys.n);
  for (std::size_t y = 0; y < sys.n; ++y) CHECK(walks[y] == doctest::Approx(capped[y]));
}

TEST_CASE("flow images are reached for at most one snap") {
  const CatalogSystem cs = load_system("cantor-fat");
  const GridSpec grid(cs.flow.torus, {512});
  const ChainGraph g = build_chain_graph(cs.flow, grid, 1.0);
  const CostField f = chain_cost(g, 100);
  for (std::size_t k = 0; k < g.flow_times().size(); ++k) CHECK(f.values[grid.nearest(g.endpoint(100, k))] <= f.tau());
}

TEST_CASE("cost fields are monotone in T") {
  const CatalogSystem cs = load_system("gradient-circle");
  const GridSpec grid(cs.flow.torus, {256});
  const auto probe = cost_monotonicity_probe(cs.flow, grid, 40, {0.5, 1.0, 2.0});
  for (std::size_t k = 0; k + 1 < probe.size(); ++k)
    for (std::size_t y = 0; y < grid.size(); ++y) CHECK(probe[k].values[y] <= probe[k + 1].values[y] + 1e-15);
}

TEST_CASE("gradient circle: only the fixed points are SCR") {
  const CatalogSystem cs = load_system("gradient-circle");
  std::vector<GridSpec> ladder;
  for (std::size_t N : {64, 128, 256, 512}) ladder.emplace_back(cs.flow.torus, std::vector<std::size_t>{N});
  const RecurrenceReport rep = scr_classify(cs.flow, ladder, 1.0);
  const auto scr = rep.nodes_of(RecurrenceClass::scr);
  REQUIRE(scr.size() == 2);
  CHECK(ladder[0].point(scr[0])[0] == doctest::Approx(0.0));
  CHECK(ladder[0].point(scr[1])[0] == doctest::Approx(0.5));
}

TEST_CASE("rotation: every node is SCR") {
  const CatalogSystem cs = load_system("rotation");
  const std::vector<GridSpec> ladder{GridSpec(cs.flow.torus, {16, 16}), GridSpec(cs.flow.torus, {32, 32})};
  const RecurrenceReport rep = scr_classify(cs.flow, ladder, 1.0);
  CHECK(rep.nodes_of(RecurrenceClass::scr).size() == 256);
}

TEST_CASE("refinement test") {
  const Thresholds th;
  CHECK(refinement_test({0.01, 0.005}, {1, 1}, {0.004, 0.002}, th));
  CHECK_FALSE(refinement_test({0.2, 0.2}, {1, 1}, {0.004, 0.002}, th));
  CHECK(refinement_test({0.03, 0.02}, {3, 3}, {0.004, 0.002}, th));
}

TEST_CASE("results do not depend on the worker count") {
  const CatalogSystem cs = load_system("cantor-null");
  const std::vector<GridSpec> ladder{GridSpec(cs.flow.torus, {256}), GridSpec(cs.flow.torus, {512})};
  set_worker_count(1);
  const RecurrenceReport a = scr_classify(cs.flow, ladder, 1.0);
  set_worker_count(4);
  const RecurrenceReport b = scr_classify(cs.flow, ladder, 1.0);
  set_worker_count(0);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].loop_cost == b.nodes[i].loop_cost);
    CHECK(a.nodes[i].cls == b.nodes[i].cls);
  }
}

TEST_CASE("continuum loop cost oracle") {
  const CatalogSystem cs = load_system("cantor-fat");
  const CantorProfile prof(*cs.cantor, *cs.cantor_options);
  const double mu = oracle::cantor_loop_bound(*cs.cantor);
  CHECK(mu == doctest::Approx(0.25));
  CHECK(oracle::cantor_loop_cost(prof, mu, prof.zero_set().front().lo, 1.0) == 0.0);
  CHECK(oracle::cantor_loop_cost(prof, mu, 0.5, 1.0) <= mu);
  CHECK(oracle::cantor_loop_bound(CantorSpec::null(4)) == 0.0);
}
