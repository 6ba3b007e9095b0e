#include "chainscope/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "chainscope/errors.hpp"
#include "chainscope/parallel.hpp"

namespace chainscope {

std::string to_string(RecurrenceClass c) {
  switch (c) {
    case RecurrenceClass::scr: return "SCR-candidate";
    case RecurrenceClass::cr_only: return "CR-only-candidate";
    case RecurrenceClass::non_recurrent: return "non-recurrent-candidate";
  }
  return "?";
}

std::vector<std::size_t> RecurrenceReport::nodes_of(RecurrenceClass c) const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes)
    if (n.cls == c) out.push_back(n.node);
  return out;
}

bool refinement_test(const std::vector<double>& v, const std::vector<std::size_t>& hops,
                     const std::vector<double>& h, const Thresholds& th) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double allowed = th.c_snap * h[k] * static_cast<double>(std::max<std::size_t>(1, hops[k]));
    if (!(v[k] <= allowed)) return false;
    if (k > 0 && !(v[k] <= th.ratio_max * v[k - 1] + th.c_snap * h[k])) return false;
  }
  return true;
}

RecurrenceReport scr_classify(const std::vector<const ChainGraph*>& graphs, const Thresholds& th) {
  if (graphs.size() < 2) throw ConfigError("classification needs at least two ladder levels");
  for (const auto* g : graphs)
    if (!g->grid()) throw ConfigError("classification needs grid-based chain graphs");
  RecurrenceReport rep;
  rep.T = graphs.front()->T();
  rep.thresholds = th;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const GridSpec& gk = *graphs[k]->grid();
    if (k > 0 && !gk.refines(rep.ladder.back())) throw ConfigError("grid ladder is not nested");
    if (graphs[k]->T() != rep.T) throw ConfigError("ladder graphs use different T");
    rep.ladder.push_back(gk);
    rep.h.push_back(gk.h_max());
  }
  const GridSpec& coarse = rep.ladder.front();
  const std::size_t levels = graphs.size();
  rep.nodes.resize(coarse.size());
  parallel_for(coarse.size(), [&](std::size_t i) {
    NodeRecurrence& nr = rep.nodes[i];
    nr.node = i;
    if (!coarse.active(i)) {
      nr.cls = RecurrenceClass::non_recurrent;
      return;
    }
    for (std::size_t k = 0; k < levels; ++k) {
      const std::size_t s = rep.ladder[k].embed(coarse, i);
      CostOptions o;
      o.c_snap = th.c_snap;
      o.stop_at = s;
      const CostField fs = chain_cost(*graphs[k], s, o);
      nr.loop_cost.push_back(fs.values[s]);
      nr.loop_hops.push_back(fs.hops[s]);
      o.mode = CostMode::bottleneck;
      const CostField fb = chain_cost(*graphs[k], s, o);
      nr.bottleneck_cost.push_back(fb.values[s]);
      if (k > 0) {
        const double prev = nr.loop_cost[k - 1];
        nr.ratios.push_back(prev > 0.0 ? nr.loop_cost[k] / prev : (nr.loop_cost[k] > 0.0 ? kInfinity : 0.0));
      }
    }
    if (refinement_test(nr.loop_cost, nr.loop_hops, rep.h, th)) {
      nr.cls = RecurrenceClass::scr;
    } else {
      const std::vector<std::size_t> one(levels, 1);
      nr.cls = refinement_test(nr.bottleneck_cost, one, rep.h, th) ? RecurrenceClass::cr_only
                                                                     : RecurrenceClass::non_recurrent;
    }
  });
  return rep;
}

RecurrenceReport scr_classify(const FlowSystem& sys, const std::vector<GridSpec>& ladder, double T,
                              const Thresholds& th) {
  if (ladder.size() < 2) throw ConfigError("classification needs at least two ladder levels");
  for (std::size_t k = 1; k < ladder.size(); ++k)
    if (!ladder[k].refines(ladder[k - 1])) throw ConfigError("grid ladder is not nested");
  std::vector<std::unique_ptr<ChainGraph>> owned;
  std::vector<const ChainGraph*> graphs;
  for (const auto& g : ladder) {
    owned.push_back(std::make_unique<ChainGraph>(build_chain_graph(sys, g, T, {}, 0.0, th.step)));
    graphs.push_back(owned.back().get());
  }
  return scr_classify(graphs, th);
}

std::vector<CostField> cost_monotonicity_probe(const FlowSystem& sys, const GridSpec& grid,
                                               std::size_t source, const std::vector<double>& T_list,
                                               double step) {
  if (T_list.empty()) throw ConfigError("monotonicity probe needs at least one T");
  for (std::size_t k = 1; k < T_list.size(); ++k)
    if (!(T_list[k] > T_list[k - 1])) throw ConfigError("T list must be strictly ascending");
  std::vector<CostField> out;
  for (std::size_t k = 0; k < T_list.size(); ++k) {
    std::vector<double> times;
    for (std::size_t j = k; j < T_list.size(); ++j) {
      const auto d = default_flow_times(T_list[j]);
      times.insert(times.end(), d.begin(), d.end());
    }
    const ChainGraph g = build_chain_graph(sys, grid, T_list[k], times, 0.0, step);
    out.push_back(chain_cost(g, source));
  }
  return out;
}

}  // namespace chainscope
