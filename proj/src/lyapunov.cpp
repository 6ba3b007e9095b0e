#include "chainscope/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chainscope/errors.hpp"
#include "chainscope/parallel.hpp"

namespace chainscope {

ScalarField synth_tilde(const ChainGraph& g, std::size_t base) {
  if (!g.grid()) throw ConfigError("synthesis needs a grid-based chain graph");
  CostField f = chain_cost(g, base);
  return ScalarField(*g.grid(), std::move(f.values));
}

SynthResult synth_lyapunov(const ChainGraph& g, const FlowSystem& sys, std::size_t base, double T,
                           std::size_t n_samples, double step) {
  if (n_samples < 2) throw ConfigError("synthesis needs at least two time samples");
  if (!g.grid()) throw ConfigError("synthesis needs a grid-based chain graph");
  if (!(T > 0.0)) throw ConfigError("synthesis needs T > 0");
  if (step <= 0.0) step = default_step(sys);
  const GridSpec& grid = *g.grid();
  CostField cost = chain_cost(g, base);
  ScalarField tilde(grid, cost.values);

  std::vector<double> s(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i)
    s[i] = T * static_cast<double>(i) / static_cast<double>(n_samples - 1);
  std::vector<double> hv(grid.size(), 0.0);
  std::vector<double> speed(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t y) {
    const TorusPoint p = grid.point(y);
    if (!grid.active(y)) {
      hv[y] = tilde[y];
      return;
    }
    double m = -kInfinity;
    for (const auto& q : integrate_checkpoints(sys, p, s, step)) m = std::max(m, tilde.interpolate(q));
    hv[y] = m;
    const TorusPoint v = sys.eval(p);
    double sp = 0.0;
    for (std::size_t j = 0; j < v.n; ++j) sp += v[j] * v[j];
    speed[y] = std::sqrt(sp);
  });

  SynthResult r{tilde, ScalarField(grid, std::move(hv)), std::move(cost)};
  std::size_t max_hops = 1;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::isfinite(r.cost.values[i])) max_hops = std::max(max_hops, r.cost.hops[i]);
  r.tau_hop = r.cost.c_snap * r.cost.h;
  r.tau_field = r.tau_hop * static_cast<double>(max_hops);
  const double vmax = *std::max_element(speed.begin(), speed.end());
  r.sampling_error = r.tilde.lipschitz_estimate() * vmax * T / static_cast<double>(n_samples - 1);
  return r;
}

namespace {

std::vector<TorusPoint> random_samples(const Torus& t, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TorusPoint> out(n);
  for (auto& p : out) {
    p.n = t.dims();
    for (std::size_t j = 0; j < t.dims(); ++j) {
      // 53-bit uniform in [0,1), independent of the standard library's distributions.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      p[j] = u * t.period(j);
    }
  }
  return out;
}

}  // namespace

LyapunovVerdict verify_lyapunov(const ScalarField& h, const FlowSystem& sys, const VerifyOptions& opts) {
  return verify_lyapunov([&h](const TorusPoint& x) { return h.interpolate(x); }, h.grid(), sys, opts);
}

LyapunovVerdict verify_lyapunov(const std::function<double(const TorusPoint&)>& h, const GridSpec& grid,
                                const FlowSystem& sys, const VerifyOptions& opts) {
  if (!(grid.torus() == sys.torus)) throw ConfigError("field and flow live on different tori");
  std::vector<double> probes = opts.t_probe.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, 5.0} : opts.t_probe;
  std::sort(probes.begin(), probes.end());
  if (probes.front() < 0.0) throw ConfigError("probe times must be nonnegative");
  const double step = opts.step > 0.0 ? opts.step : default_step(sys);
  const std::vector<TorusPoint> samples =
      opts.samples.empty() ? random_samples(sys.torus, opts.n_random, opts.seed) : opts.samples;

  LyapunovVerdict v;
  v.tol = opts.tol;
  v.neutral_tol = opts.tol;

  auto drift_of = [&](const TorusPoint& y, double& inc, double& drift) {
    const double h0 = h(y);
    if (!std::isfinite(h0)) throw NumericError("non-finite field value", y.to_vector());
    inc = -kInfinity;
    drift = 0.0;
    for (const auto& q : integrate_checkpoints(sys, y, probes, step)) {
      const double d = h(q) - h0;
      if (!std::isfinite(d)) throw NumericError("non-finite field value", q.to_vector());
      inc = std::max(inc, d);
      drift = std::max(drift, std::fabs(d));
    }
  };

  std::vector<double> inc(samples.size()), drift(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { drift_of(samples[i], inc[i], drift[i]); });
  v.max_increase = samples.empty() ? 0.0 : *std::max_element(inc.begin(), inc.end());
  v.max_drift = samples.empty() ? 0.0 : *std::max_element(drift.begin(), drift.end());

  const std::size_t N = grid.size();
  std::vector<double> node_val(N);
  for (std::size_t i = 0; i < N; ++i) node_val[i] = h(grid.point(i));
  double lo = kInfinity, hi = -kInfinity;
  for (std::size_t i = 0; i < N; ++i)
    if (grid.active(i)) {
      lo = std::min(lo, node_val[i]);
      hi = std::max(hi, node_val[i]);
    }
  v.range = hi - lo;

  if (opts.neutral_set) {
    std::vector<char> neutral(N, 0);
    parallel_for(N, [&](std::size_t i) {
      if (!grid.active(i)) return;
      double a, d;
      drift_of(grid.point(i), a, d);
      neutral[i] = d <= v.neutral_tol;
    });
    for (std::size_t i = 0; i < N; ++i)
      if (neutral[i]) v.neutral_set_nodes.push_back(i);
  }

  // dh.V by central differences at half spacing, away from kinks.
  const std::size_t n = grid.dims();
  std::vector<double> disagree(N * n, 0.0);
  double max_slope = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double hj = grid.spacing(j);
      const double sl = (node_val[i] - node_val[grid.shift(i, j, -1)]) / hj;
      const double sr = (node_val[grid.shift(i, j, 1)] - node_val[i]) / hj;
      disagree[i * n + j] = std::fabs(sr - sl);
      max_slope = std::max({max_slope, std::fabs(sl), std::fabs(sr)});
    }
  std::vector<double> sorted(disagree);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double kink = 10.0 * median + 1e-9 * (1.0 + max_slope);
  double best = -kInfinity;
  for (std::size_t i = 0; i < N; ++i) {
    if (!grid.active(i)) continue;
    bool smooth = true;
    for (std::size_t j = 0; j < n; ++j) smooth = smooth && disagree[i * n + j] <= kink;
    if (!smooth) continue;
    const TorusPoint x = grid.point(i);
    const TorusPoint V = sys.eval(x);
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = 0.5 * grid.spacing(j);
      TorusPoint a = x, b = x;
      a[j] += d;
      b[j] -= d;
      dot += (h(sys.torus.reduce(a)) - h(sys.torus.reduce(b))) / (2.0 * d) * V[j];
    }
    best = std::max(best, dot);
    ++v.dhV_nodes;
  }
  v.max_dhV = v.dhV_nodes ? best : 0.0;

  v.is_lyapunov = v.max_increase <= v.tol;
  v.is_first_integral = v.max_drift <= v.tol;
  v.is_constant = v.range <= v.tol;
  // Definitional implications (hold automatically for interpolated fields).
  if (v.is_constant) v.is_first_integral = true;
  if (v.is_first_integral) v.is_lyapunov = true;
  return v;
}

ExplicitCantorLyapunov::ExplicitCantorLyapunov(const CantorSpec& spec) : pieces_(spec.pieces()) {
  if (spec.depth == 0) throw ConfigError("explicit Lyapunov function needs an approximation level");
  prefix_.resize(pieces_.size() + 1, 0.0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) prefix_[i + 1] = prefix_[i] + pieces_[i].length();
  delta_ = prefix_.back();
  if (!(delta_ > 0.0 && delta_ < 1.0)) throw ConfigError("explicit Lyapunov function needs 0 < measure < 1");
}

double ExplicitCantorLyapunov::measure_below(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == pieces_.begin()) return 0.0;
  const auto i = static_cast<std::size_t>(it - pieces_.begin()) - 1;
  return prefix_[i] + std::clamp(x - pieces_[i].lo, 0.0, pieces_[i].length());
}

double ExplicitCantorLyapunov::operator()(double x) const {
  x -= std::floor(x);
  const double mk = measure_below(x);
  return mk / delta_ - (x - mk) / (1.0 - delta_);
}

ScalarField explicit_cantor_lyapunov(const CantorSpec& spec, const GridSpec& grid) {
  if (grid.dims() != 1 || grid.torus().period(0) != 1.0) throw ConfigError("Cantor functions live on R/Z");
  const ExplicitCantorLyapunov h(spec);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = h(grid.point(i)[0]);
  return ScalarField(grid, std::move(v));
}

}  // namespace chainscope
