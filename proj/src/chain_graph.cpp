#include "chainscope/chain_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chainscope/errors.hpp"
#include "chainscope/parallel.hpp"

namespace chainscope {

std::vector<double> default_flow_times(double T) { return {T, 1.5 * T, 2.0 * T, 3.0 * T}; }

ChainGraph::ChainGraph(std::size_t nodes, const std::vector<Arc>& arcs) {
  if (nodes == 0) throw ConfigError("graph needs at least one node");
  if (nodes > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("graph too large");
  std::vector<std::size_t> deg(nodes, 0);
  for (const auto& a : arcs) {
    if (a.from >= nodes || a.to >= nodes) throw InputError("arc endpoint out of range");
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) throw InputError("arc weights must be finite and nonnegative");
    ++deg[a.from];
  }
  offsets_.assign(nodes + 1, 0);
  for (std::size_t u = 0; u < nodes; ++u) offsets_[u + 1] = offsets_[u] + deg[u];
  edges_.resize(arcs.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& a : arcs) edges_[fill[a.from]++] = {static_cast<std::uint32_t>(a.to), a.weight};
}

namespace {

// Appends arcs from one flow endpoint: every active node within r, plus the
// nearest active node if it lies farther. Returns true for a forced snap.
bool gather(const GridSpec& grid, const TorusPoint& p, double r, std::vector<Edge>& out) {
  const std::size_t n = grid.dims();
  std::vector<long long> lo(n), len(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double h = grid.spacing(j);
    const auto N = static_cast<long long>(grid.count(j));
    const auto k = static_cast<long long>(std::floor(r / h)) + 1;
    const auto c = static_cast<long long>(std::floor(p[j] / h));
    lo[j] = c - k;
    len[j] = std::min(N, 2 * k + 2);
  }
  const std::size_t nearest = grid.nearest(p);
  bool have_nearest = false;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_d = std::numeric_limits<double>::infinity();
  std::vector<long long> off(n, 0);
  std::vector<std::size_t> multi(n);
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto N = static_cast<long long>(grid.count(j));
      long long i = (lo[j] + off[j]) % N;
      if (i < 0) i += N;
      multi[j] = static_cast<std::size_t>(i);
    }
    const std::size_t w = grid.index(multi);
    if (grid.active(w)) {
      const double d = torus_distance(p, grid.point(w), grid.torus());
      if (d <= r) {
        out.push_back({static_cast<std::uint32_t>(w), d});
        if (w == nearest) have_nearest = true;
      }
      if (d < best_d) {
        best_d = d;
        best = w;
      }
    }
    std::size_t j = 0;
    while (j < n && ++off[j] == len[j]) off[j++] = 0;
    if (j == n) break;
  }
  if (have_nearest) return false;
  std::size_t snap = nearest;
  if (!grid.active(snap)) {
    if (best == std::numeric_limits<std::size_t>::max()) return false;
    snap = best;
  }
  const double d = torus_distance(p, grid.point(snap), grid.torus());
  if (d <= r) return false;  // already gathered
  out.push_back({static_cast<std::uint32_t>(snap), d});
  return true;
}

}  // namespace

ChainGraph build_chain_graph(const FlowSystem& sys, const GridSpec& grid, double T,
                             const std::vector<double>& flow_times, double r_jump, double step) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("minimum flow time T must be positive");
  if (!(sys.torus == grid.torus())) throw ConfigError("grid torus does not match the flow");
  if (grid.size() > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("grid too large");
  std::vector<double> times = flow_times.empty() ? default_flow_times(T) : flow_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (double t : times)
    if (!(t >= T) || !std::isfinite(t)) throw ConfigError("flow times must be finite and at least T");
  if (r_jump <= 0.0) r_jump = 3.0 * grid.h_max();
  if (r_jump < grid.h_max()) throw ConfigError("jump radius smaller than grid spacing");
  if (step <= 0.0) step = default_step(sys);

  ChainGraph g;
  g.grid_ = grid;
  g.T_ = T;
  g.flow_times_ = times;
  g.r_jump_ = r_jump;

  const std::size_t N = grid.size();
  const std::size_t m = times.size();
  g.endpoints_.resize(N * m);
  std::vector<std::vector<Edge>> local(N);
  std::vector<unsigned char> forced(N, 0);
  parallel_for(N, [&](std::size_t u) {
    if (!grid.active(u)) return;
    const auto ends = integrate_checkpoints(sys, grid.point(u), times, step);
    auto& out = local[u];
    out.reserve(m * 8);
    for (std::size_t k = 0; k < m; ++k) {
      g.endpoints_[u * m + k] = ends[k];
      if (gather(grid, ends[k], r_jump, out)) ++forced[u];
    }
  });

  g.offsets_.assign(N + 1, 0);
  for (std::size_t u = 0; u < N; ++u) {
    g.offsets_[u + 1] = g.offsets_[u] + local[u].size();
    g.forced_snaps_ += forced[u];
  }
  g.edges_.reserve(g.offsets_[N]);
  for (auto& v : local) {
    g.edges_.insert(g.edges_.end(), v.begin(), v.end());
    std::vector<Edge>().swap(v);
  }
  return g;
}

}  // namespace chainscope
