#include "chainscope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chainscope/errors.hpp"

namespace chainscope::oracle {

void FiniteChainSystem::check_metric() const {
  if (dist.size() != n * n || successor.size() != n) throw InputError("finite system has inconsistent sizes");
  for (std::size_t a = 0; a < n; ++a) {
    if (successor[a] >= n) throw InputError("successor out of range");
    if (d(a, a) != 0.0) throw InputError("distance to self must be zero");
    for (std::size_t b = 0; b < n; ++b) {
      if (d(a, b) != d(b, a)) throw InputError("distance is not symmetric");
      if (a != b && !(d(a, b) > 0.0)) throw InputError("distinct points at zero distance");
      for (std::size_t c = 0; c < n; ++c)
        if (d(a, c) > (d(a, b) + d(b, c)) * (1.0 + 1e-12)) throw InputError("triangle inequality fails");
    }
  }
}

ChainGraph FiniteChainSystem::induced_graph() const {
  std::vector<ChainGraph::Arc> arcs;
  arcs.reserve(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w) arcs.push_back({u, w, d(successor[u], w)});
  return ChainGraph(n, arcs);
}

FiniteChainSystem FiniteChainSystem::random(std::size_t n, std::mt19937_64& rng) {
  if (n < 1 || n > 12) throw ConfigError("finite systems hold 1 to 12 nodes");
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  FiniteChainSystem s;
  s.n = n;
  s.max_len = n;
  std::vector<double> px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = unit();
    py[i] = unit();
  }
  s.dist.assign(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = std::hypot(px[a] - px[b], py[a] - py[b]);
      s.dist[a * n + b] = d;
      s.dist[b * n + a] = d;
    }
  s.successor.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.successor[i] = (rng() % 4 == 0) ? i : static_cast<std::size_t>(rng() % n);
  return s;
}

namespace {

struct Search {
  const FiniteChainSystem& sys;
  std::size_t x;
  bool prune;
  std::vector<double> best;
  std::vector<char> used;
  double bound = std::numeric_limits<double>::infinity();

  void update_bound() {
    double m = 0.0;
    for (double b : best) m = std::max(m, b);
    bound = m;
  }

  // At node u after `steps` steps with accumulated cost c (u == x only at the start).
  void go(std::size_t u, double c, std::size_t steps) {
    if (steps == sys.max_len) return;
    const std::size_t s = sys.successor[u];
    for (std::size_t w = 0; w < sys.n; ++w) {
      const double cw = c + sys.d(s, w);
      if (prune && cw > bound) continue;
      if (cw < best[w]) {
        best[w] = cw;
        if (prune) update_bound();
      }
      if (w == x || used[w]) continue;
      used[w] = 1;
      go(w, cw, steps + 1);
      used[w] = 0;
    }
  }
};

}  // namespace

std::vector<double> brute_chain_costs(const FiniteChainSystem& sys, std::size_t x, bool prune) {
  if (x >= sys.n) throw InputError("node out of range");
  Search s{sys, x, prune, std::vector<double>(sys.n, std::numeric_limits<double>::infinity()),
           std::vector<char>(sys.n, 0)};
  s.go(x, 0.0, 0);
  return s.best;
}

double brute_chain_cost(const FiniteChainSystem& sys, std::size_t x, std::size_t y, bool prune) {
  if (y >= sys.n) throw InputError("node out of range");
  return brute_chain_costs(sys, x, prune)[y];
}

std::vector<double> walk_costs(const FiniteChainSystem& sys, std::size_t x, std::size_t steps) {
  if (x >= sys.n) throw InputError("node out of range");
  std::vector<double> best(sys.n, std::numeric_limits<double>::infinity());
  // Layered enumeration of every walk; exponential, for tiny systems only.
  auto rec = [&](auto&& self, std::size_t u, double c, std::size_t k) -> void {
    if (k == steps) return;
    const std::size_t s = sys.successor[u];
    for (std::size_t w = 0; w < sys.n; ++w) {
      const double cw = c + sys.d(s, w);
      best[w] = std::min(best[w], cw);
      self(self, w, cw, k + 1);
    }
  };
  rec(rec, x, 0.0, 0);
  return best;
}

double cantor_loop_bound(const CantorSpec& spec) {
  if (spec.kind == CantorKind::null) return 0.0;
  double m = 0.0;
  for (const auto& p : spec.pieces()) m += p.length();
  return m;
}

double cantor_flow_displacement(const CantorProfile& prof, double x, double t) {
  if (prof.options().exponent != 1.0) throw ConfigError("closed-form gap flow needs exponent 1");
  if (t < 0.0) throw InputError("displacement needs t >= 0");
  const Interval g = prof.gap_containing(x);
  if (g.hi <= g.lo) return 0.0;
  const double k = prof.options().gain;
  const double len = g.length();
  const double c = std::min(1.0 / k, 0.5 * len);  // width of each exponential zone
  double pos = x - g.lo;                           // distance from the left end
  double left = t;
  if (pos < c) {
    const double tau = std::log(c / pos) / k;
    if (left <= tau) return pos * std::exp(k * left) - (x - g.lo);
    left -= tau;
    pos = c;
  }
  if (pos < len - c) {
    const double run = (len - c) - pos;
    if (left <= run) return pos + left - (x - g.lo);
    left -= run;
    pos = len - c;
  }
  const double s = (len - pos) * std::exp(-k * left);
  return (len - s) - (x - g.lo);
}

double cantor_loop_cost(const CantorProfile& prof, double mu, double x, double T) {
  if (prof.dist(x) == 0.0) return 0.0;
  return std::min(cantor_flow_displacement(prof, x, T), mu);
}

}  // namespace chainscope::oracle
