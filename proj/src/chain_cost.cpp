#include "chainscope/chain_cost.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "chainscope/errors.hpp"

namespace chainscope {

double CostField::tau(std::size_t node) const {
  return c_snap * h * static_cast<double>(std::max<std::size_t>(1, hops[node]));
}

CostField chain_cost(const ChainGraph& g, std::size_t source, const CostOptions& opts) {
  const std::size_t N = g.size();
  if (source >= N) throw InputError("source node out of range");
  CostField f;
  f.source = source;
  f.T = g.T();
  f.mode = opts.mode;
  f.h = g.h();
  f.r_jump = g.r_jump();
  f.flow_times = g.flow_times();
  f.c_snap = opts.c_snap;
  f.values.assign(N, kInfinity);
  f.hops.assign(N, 0);

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  std::vector<char> settled(N, 0);
  const bool sum = opts.mode == CostMode::sum;
  const GridSpec* grid = g.grid() ? &*g.grid() : nullptr;
  const bool lip = sum && opts.lipschitz_edges && grid != nullptr;

  auto relax = [&](std::size_t w, double cand, std::size_t hops) {
    if (cand < f.values[w] || (cand == f.values[w] && hops < f.hops[w] && !settled[w])) {
      f.values[w] = cand;
      f.hops[w] = hops;
      heap.emplace(cand, w);
    }
  };

  // The source is not at cost 0: a chain needs at least one flow segment.
  for (const Edge* e = g.begin(source); e != g.end(source); ++e) relax(e->target, e->weight, 1);

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != f.values[u]) continue;
    settled[u] = 1;
    if (opts.stop_at && *opts.stop_at == u) break;
    const std::size_t hu = f.hops[u];
    for (const Edge* e = g.begin(u); e != g.end(u); ++e) {
      const double c = sum ? d + e->weight : std::max(d, e->weight);
      relax(e->target, c, hu + 1);
    }
    if (lip) {
      const TorusPoint pu = grid->point(u);
      for (std::size_t j = 0; j < grid->dims(); ++j) {
        for (long long s : {-1LL, 1LL}) {
          const std::size_t v = grid->shift(u, j, s);
          if (v == u || !grid->active(v)) continue;
          relax(v, d + torus_distance(pu, grid->point(v), grid->torus()), hu);
        }
      }
    }
  }
  return f;
}

}  // namespace chainscope
