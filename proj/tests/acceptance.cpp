// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "chainscope/catalog.hpp"
#include "chainscope/chain_cost.hpp"
#include "chainscope/chain_graph.hpp"
#include "chainscope/lyapunov.hpp"
#include "chainscope/oracle.hpp"
#include "chainscope/recurrence.hpp"
#include "chainscope/symplectic.hpp"

using namespace chainscope;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// ------------------------------------------------------------ 1

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const auto sys = oracle::FiniteChainSystem::random(2 + rng() % 11, rng);
    const ChainGraph g = sys.induced_graph();
    for (std::size_t x = 0; x < sys.n; ++x)
      if (chain_cost(g, x).values != oracle::brute_chain_costs(sys, x)) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " sources differ from exhaustive enumeration");
  o.note("200 systems, <= 12 nodes, exact equality");
  return o;
}

// ------------------------------------------------------------ 2

struct NamedFlow {
  std::string label;
  std::vector<std::size_t> counts;
};

const std::vector<NamedFlow> kFourFlows{
    {"cantor-fat", {2048}}, {"cantor-null", {2048}}, {"rotation", {64, 32}}, {"outer-x1", {2048}}};

Outcome criterion2() {
  Outcome o;
  for (const auto& nf : kFourFlows) {
    const CatalogSystem cs = load_system(nf.label);
    const GridSpec grid(cs.flow.torus, nf.counts);
    const ChainGraph g = build_chain_graph(cs.flow, grid, 1.0);
    const double tau = kDefaultSnapConstant * grid.h_max();
    std::vector<std::size_t> sources;
    for (std::size_t k = 0; k < 8; ++k) sources.push_back((k * grid.size()) / 8 + 3);
    std::vector<CostField> fields;
    for (auto s : sources) fields.push_back(chain_cost(g, s));

    double tri = 0.0, reach = 0.0, lip = 0.0, mono = 0.0;
    for (std::size_t a = 0; a < sources.size(); ++a)
      for (std::size_t b = 0; b < sources.size(); ++b)
        for (std::size_t z = 0; z < grid.size(); ++z)
          tri = std::max(tri, fields[a].values[z] - fields[a].values[sources[b]] - fields[b].values[z]);
    for (std::size_t a = 0; a < sources.size(); ++a) {
      const auto& f = fields[a];
      for (std::size_t k = 0; k < g.flow_times().size(); ++k)
        reach = std::max(reach, f.values[grid.nearest(g.endpoint(sources[a], k))]);
      for (std::size_t y = 0; y < grid.size(); ++y)
        for (std::size_t j = 0; j < grid.dims(); ++j) {
          const std::size_t w = grid.shift(y, j, 1);
          const double d = torus_distance(grid.point(y), grid.point(w), grid.torus());
          lip = std::max(lip, std::fabs(f.values[y] - f.values[w]) - d);
        }
    }
    const std::vector<double> Ts{0.5, 1.0, 2.0};
    for (std::size_t a = 0; a < 2; ++a) {
      const auto probe = cost_monotonicity_probe(cs.flow, grid, sources[a], Ts);
      for (std::size_t k = 0; k + 1 < probe.size(); ++k)
        for (std::size_t y = 0; y < grid.size(); ++y)
          mono = std::max(mono, probe[k].values[y] - probe[k + 1].values[y]);
    }
    o.require(tri <= 2.0 * tau, nf.label + fmt(" triangle excess %.3g", tri));
    o.require(reach <= tau, nf.label + fmt(" flow-reachability cost %.3g", reach));
    o.require(lip <= tau, nf.label + fmt(" Lipschitz excess %.3g", lip));
    o.require(mono <= tau, nf.label + fmt(" monotonicity excess %.3g", mono));
    o.note(nf.label + fmt(" tau %.3g", tau) + fmt(" tri %.2g", tri) + fmt(" reach %.2g", reach) +
           fmt(" lip %.2g", lip) + fmt(" mono %.2g", mono));
  }
  return o;
}

// ------------------------------------------------------------ 3

Outcome criterion3() {
  Outcome o;
  const CatalogSystem cs = load_system("cantor-fat");
  const CantorProfile prof(*cs.cantor, *cs.cantor_options);
  const double mu = oracle::cantor_loop_bound(*cs.cantor);
  std::vector<GridSpec> ladder;
  for (std::size_t N : {2048, 4096, 8192}) ladder.emplace_back(cs.flow.torus, std::vector<std::size_t>{N});
  const RecurrenceReport rep = scr_classify(cs.flow, ladder, 1.0);
  const GridSpec& coarse = ladder.front();
  const double h0 = coarse.h_max();

  std::size_t missing_k = 0, far_scr = 0, window_bad = 0, window_n = 0, drift_bad = 0, oracle_bad = 0;
  double lo = 1e9, hi = 0.0, worst_rel = 0.0, worst_oracle = 0.0;
  for (const auto& n : rep.nodes) {
    const double x = coarse.point(n.node)[0];
    const double dist = prof.dist(x);
    const bool scr = n.cls == RecurrenceClass::scr;
    if (dist == 0.0 && !scr) ++missing_k;
    if (scr && dist > h0) ++far_scr;
    if (dist == 0.0) continue;
    // Level 1 is the 4096 grid, level 2 its refinement.
    const double v1 = n.loop_cost[1], v2 = n.loop_cost[2];
    const double orc = oracle::cantor_loop_cost(prof, mu, x, 1.0);
    const double slack = kDefaultSnapConstant * rep.h[1] * std::max<std::size_t>(1, n.loop_hops[1]);
    // Continuum value min(d_T, mu); the winding branch is held to the same
    // [0.8 mu, 1.2 mu] window as the base nodes below.
    const double dT = oracle::cantor_flow_displacement(prof, x, 1.0);
    const double upper = std::min(dT + slack, 1.2 * mu), lower = std::min(orc, 0.8 * mu) - slack;
    worst_oracle = std::max({worst_oracle, v1 - upper, lower - v1});
    if (v1 > upper || v1 < lower) ++oracle_bad;
    if (oracle::cantor_flow_displacement(prof, x, 1.0) >= 1.2 * mu) {
      ++window_n;
      lo = std::min(lo, v1);
      hi = std::max(hi, v1);
      if (v1 < 0.8 * mu || v1 > 1.2 * mu) ++window_bad;
      const double rel = std::fabs(v2 - v1) / v1;
      worst_rel = std::max(worst_rel, rel);
      if (rel > 0.1 || std::fabs(v2 - mu) > std::fabs(v1 - mu)) ++drift_bad;
    }
  }
  o.require(missing_k == 0, std::to_string(missing_k) + " zero-set nodes not SCR");
  o.require(far_scr == 0, std::to_string(far_scr) + " SCR nodes farther than h from K");
  o.require(window_n > 0, "no base node with d_T >= 1.2 mu");
  o.require(window_bad == 0, std::to_string(window_bad) + " loop costs outside [0.8mu, 1.2mu]");
  o.require(drift_bad == 0, std::to_string(drift_bad) + " nodes not moving toward mu within 10%");
  o.require(oracle_bad == 0, std::to_string(oracle_bad) + " K^c nodes off the continuum loop cost");
  o.note(fmt("mu %.4f", mu) + fmt2(" window [%.4f, %.4f]", lo, hi) + " over " + std::to_string(window_n) +
         " nodes" + fmt(", max rel change %.3f", worst_rel) + fmt(", oracle excess %.2g", worst_oracle) +
         ", SCR " + std::to_string(rep.nodes_of(RecurrenceClass::scr).size()));
  return o;
}

// ------------------------------------------------------------ 4

Outcome criterion4() {
  Outcome o;
  const CatalogSystem cs = load_system("cantor-null");
  std::vector<GridSpec> ladder;
  for (std::size_t N : {2048, 4096}) ladder.emplace_back(cs.flow.torus, std::vector<std::size_t>{N});
  const RecurrenceReport rep = scr_classify(cs.flow, ladder, 1.0);
  const std::size_t scr = rep.nodes_of(RecurrenceClass::scr).size();
  double m0 = 0.0, m1 = 0.0;
  for (const auto& n : rep.nodes) {
    m0 = std::max(m0, n.loop_cost[0]);
    m1 = std::max(m1, n.loop_cost[1]);
  }
  const double ratio = m1 / m0;
  o.require(scr == rep.nodes.size(),
            std::to_string(rep.nodes.size() - scr) + " of " + std::to_string(rep.nodes.size()) + " nodes not SCR");
  o.require(ratio >= 0.3 && ratio <= 0.7, fmt("max loop cost ratio %.3f outside [0.3, 0.7]", ratio));
  o.note(fmt2("max loop cost %.5f -> %.5f", m0, m1) + fmt(" (ratio %.3f)", ratio));
  return o;
}

// ------------------------------------------------------------ 5

Outcome criterion5() {
  Outcome o;
  for (const auto& nf : kFourFlows) {
    const CatalogSystem cs = load_system(nf.label);
    const GridSpec grid(cs.flow.torus, nf.counts);
    // Cantor flows expand by e^(gain * 3T) near repelling gap ends; a shorter
    // horizon keeps the per-hop snap error inside c_snap * h.
    const double T = cs.cantor ? 0.25 : 1.0;
    const bool outer = nf.label == "outer-x1";
    const std::size_t base = outer ? grid.nearest(TorusPoint{0.5}) : 0;
    const ChainGraph g = build_chain_graph(cs.flow, grid, T);
    const SynthResult syn = synth_lyapunov(g, cs.flow, base, T);
    VerifyOptions vo;
    vo.n_random = 1000;
    vo.seed = 7;
    vo.tol = 2.0 * syn.tau_hop;
    vo.neutral_set = outer;
    const LyapunovVerdict v = verify_lyapunov(syn.h, cs.flow, vo);
    o.require(v.is_lyapunov, nf.label + fmt(" increase %.3g", v.max_increase) + fmt(" > tol %.3g", vo.tol));
    o.note(nf.label + fmt(" increase %.2g", v.max_increase) + fmt(" tol %.2g", vo.tol) + fmt(" range %.3g", v.range));
    if (nf.label == "rotation") o.require(v.range <= 2.0 * syn.tau_hop, fmt("rotation range %.3g", v.range));
    if (outer) {
      o.require(!v.is_constant && v.range >= 0.1, fmt("outer-x1 range %.3g < 0.1", v.range));
      std::vector<char> neutral(grid.size(), 0);
      for (auto u : v.neutral_set_nodes) neutral[u] = 1;
      std::size_t missing = 0;
      const double h = grid.h_max();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.point(i)[0];
        if (x >= 1.0 / 3.0 + h && x <= 2.0 / 3.0 - h && !neutral[i]) ++missing;
      }
      o.require(missing == 0, std::to_string(missing) + " band nodes outside the neutral set");
    }
  }
  return o;
}

// ------------------------------------------------------------ 6

Outcome criterion6() {
  Outcome o;
  const CantorSpec spec = CantorSpec::fat(0.25, 12);
  const FlowSystem sys = build_cantor_flow(spec);
  const ExplicitCantorLyapunov h(spec);
  VerifyOptions vo;
  vo.n_random = 1000;
  vo.seed = 11;
  const GridSpec grid(sys.torus, {2048});
  const LyapunovVerdict v = verify_lyapunov([&h](const TorusPoint& x) { return h(x[0]); }, grid, sys, vo);
  const std::size_t M = 1 << 18;
  double lip = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const double a = static_cast<double>(i) / M, b = static_cast<double>(i + 1) / M;
    lip = std::max(lip, std::fabs(h(b < 1.0 ? b : 0.0) - h(a)) / (b - a));
  }
  o.require(v.is_lyapunov, fmt("not Lyapunov (increase %.3g)", v.max_increase));
  o.require(!v.is_first_integral, "reported as a first integral");
  o.require(lip <= h.lipschitz_bound() + 1e-6, fmt("Lipschitz %.9g", lip) + fmt(" > %.9g", h.lipschitz_bound()));
  o.note(fmt2("Lipschitz %.6f (bound %.6f)", lip, h.lipschitz_bound()));
  return o;
}

// ------------------------------------------------------------ 7

Outcome criterion7() {
  Outcome o;
  const CatalogSystem cs = load_system("pps-example");
  const Potential u = Potential::from_expression(Expression::parse("-2*cos(x1)", 2));
  const GridSpec grid(cs.hamiltonian->torus, {512, 512});
  double worst = 0.0, mn = 1e9;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TorusPoint x = grid.point(i);
    const double s = std::sin(x[0]);
    const double H = cs.hamiltonian->value(x, u.gradient(x, grid.torus()));
    worst = std::max(worst, std::fabs(H - 4.0 * s * s * (1.0 - s)));
    mn = std::min(mn, H);
  }
  o.require(worst <= 1e-9, fmt("identity error %.3g", worst));
  o.require(mn >= -1e-9, fmt("min H %.3g", mn));
  o.note(fmt2("max error %.3g, min H(x,du) %.3g", worst, mn));
  return o;
}

// ------------------------------------------------------------ 8

Outcome criterion8() {
  Outcome o;
  const CatalogSystem cs = load_system("mane", Config::parse("Y1 = 0.3 + 0.5*sin(2*pi*x2)\nY2 = 0.7 + 0.2*cos(2*pi*x1)"));
  const HamiltonianSystem& H = *cs.hamiltonian;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.25 * k);
  const double step = 1e-3;
  double sup = 0.0, ydrift = 0.0;
  for (int i = 0; i < 10; ++i) {
    const TorusPoint x0{U(rng), U(rng)};
    const auto traj = hamiltonian_trajectory(H, {x0, TorusPoint::zeros(2)}, times, step);
    const auto flow = integrate_checkpoints(cs.flow, x0, times, step);
    for (std::size_t k = 0; k < times.size(); ++k) {
      sup = std::max(sup, torus_distance(traj[k].x, flow[k], cs.flow.torus));
      ydrift = std::max({ydrift, std::fabs(traj[k].y[0]), std::fabs(traj[k].y[1])});
    }
  }
  const GridSpec probe(cs.flow.torus, {24, 24});
  const auto red = zero_section_reduction(H, probe);
  double rt = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const auto a = red.Y.eval(probe.point(i)), b = cs.flow.eval(probe.point(i));
    rt = std::max({rt, std::fabs(a[0] - b[0]), std::fabs(a[1] - b[1])});
  }
  o.require(sup <= 1e-6, fmt("trajectory distance %.3g", sup));
  o.require(rt <= 1e-12, fmt("round trip %.3g", rt));
  o.note(fmt2("sup distance %.3g, y drift %.3g", sup, ydrift) + fmt(", round trip %.3g", rt));
  return o;
}

// ------------------------------------------------------------ 9

Outcome criterion9() {
  Outcome o;
  const Torus t(2);
  const GridSpec probe(t, {64, 64});
  auto check = [&](const OneForm& f, double c1, double c2, const std::string& name) {
    const auto cls = liouville_class(f, probe);
    const double err = std::max(std::fabs(cls.components[0] - c1), std::fabs(cls.components[1] - c2));
    o.require(err <= 1e-6, name + fmt(" class error %.3g", err));
    return err;
  };
  double worst = 0.0;
  worst = std::max(worst, check(OneForm::constant(t, {0.3, -1.2}), 0.3, -1.2, "constant"));
  worst = std::max(worst, check(OneForm::exact_expression(t, Expression::parse("sin(2*pi*x1)*cos(2*pi*x2)", 2)), 0, 0, "exact"));
  worst = std::max(worst, check(OneForm::from_expressions(t, {Expression::parse("0.7 + cos(2*pi*x1)*sin(4*pi*x2)", 2),
                                                              Expression::parse("-0.2 + 2*sin(2*pi*x1)*cos(4*pi*x2)", 2)}),
                                0.7, -0.2, "mixed"));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<int> K(1, 3);
  auto random_form = [&] {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f*sin(2*pi*(%d*x1 + %d*x2) + %.6f)", U(rng), K(rng), K(rng), 3.0 * U(rng));
    return OneForm::sum(OneForm::constant(t, {U(rng), U(rng)}), OneForm::exact_expression(t, Expression::parse(buf, 2)));
  };
  double additivity = 0.0;
  for (int i = 0; i < 20; ++i) {
    const OneForm eta = random_form(), theta = random_form();
    const auto a = liouville_class(eta, probe), b = liouville_class(theta, probe);
    const auto c = liouville_class(translate_graph(eta, theta), probe);
    for (std::size_t j = 0; j < 2; ++j)
      additivity = std::max(additivity, std::fabs(c.components[j] - a.components[j] - b.components[j]));
  }
  o.require(additivity <= 1e-6, fmt("additivity error %.3g", additivity));
  o.note(fmt2("class error %.3g, additivity error %.3g over 20 pairs", worst, additivity));
  return o;
}

// ------------------------------------------------------------ 10

Outcome criterion10() {
  Outcome o;
  const CatalogSystem cs = load_system("outer-example");
  const GridSpec grid(cs.flow.torus, {64, 64});
  DeformationFamily fam;
  fam.r = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  fam.u = [](const JetVec& x, double r) { return r * outer_g(x[0]); };
  OuterOptions oo;
  oo.verify.neutral_set = false;
  const OuterResult res = outer_leading_term(fam, cs.flow, grid, oo);
  o.require(!res.degenerate, "family reported degenerate");
  if (!res.degenerate) {
    double mean = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) mean += outer_g(grid.point(i)[0]);
    mean /= static_cast<double>(grid.size());
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      err = std::max(err, std::fabs((*res.v)[i] - (outer_g(grid.point(i)[0]) - mean)));
    o.require(res.order == 1, "order " + std::to_string(res.order));
    o.require(err <= 1e-3, fmt("v error %.3g", err));
    o.require(res.min_dvY >= -1e-9, fmt("min dv.Y %.3g", res.min_dvY));
    o.note("order " + std::to_string(res.order) + fmt(", slope %.6f", res.slope) + fmt(", v error %.3g", err) +
           fmt(", min dv.Y %.3g", res.min_dvY));
  }
  double smin = 1e9;
  for (double r : {0.1, 0.5, 1.0}) {
    const Potential u = Potential::from_jet([r](const JetVec& x) { return r * outer_g(x[0]); });
    smin = std::min(smin, sublevel_check(*cs.hamiltonian, 0.0, u, GridSpec(cs.flow.torus, {256, 64})).min);
  }
  o.require(smin >= -1e-9, fmt("sublevel min %.3g", smin));
  o.note(fmt("sublevel min %.3g", smin));

  // Rotation as the reduced field of a Mane Hamiltonian.
  const CatalogSystem mane = load_system("mane");
  const GridSpec mg(mane.flow.torus, {32, 32});
  const std::vector<double> rs{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  std::size_t admissible = 0, violations = 0;
  for (const char* text : {"0*r", "r", "r*sin(2*pi*x1)", "r*cos(2*pi*(x1 + x2))", "r^2*sin(2*pi*x2)",
                           "r*(sin(2*pi*x1) + 0.5*cos(2*pi*x2))", "r^3*cos(2*pi*x1)*sin(2*pi*x2)"}) {
    const DeformationFamily f = DeformationFamily::from_expression(Expression::parse(text, 2, false, true), rs);
    bool adm = true;
    for (double r : rs) {
      auto ufn = f.u;
      const Potential u = Potential::from_jet([ufn, r](const JetVec& x) { return ufn(x, r); });
      adm = adm && sublevel_check(*mane.hamiltonian, 0.0, u, mg).min >= -1e-9;
    }
    if (!adm) continue;
    ++admissible;
    OuterOptions mo;
    mo.verify.neutral_set = false;
    const OuterResult r = outer_leading_term(f, mane.flow, mg, mo);
    if (!r.degenerate && !r.v_constant) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " admissible rotation families with non-constant v");
  o.note(std::to_string(admissible) + "/7 rotation probes admissible, all degenerate or constant");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 exact oracle equivalence", criterion1},       {"2 cost field properties", criterion2},
      {"3 fat Cantor classification", criterion3},      {"4 null Cantor classification", criterion4},
      {"5 Lyapunov synthesis soundness", criterion5},   {"6 explicit Cantor Lyapunov function", criterion6},
      {"7 first example identity", criterion7},         {"8 Mane reduction", criterion8},
      {"9 Liouville classes", criterion9},              {"10 outer rigidity mechanism", criterion10},
  };
  const std::vector<double> budget{10.0, 120.0, 60.0, 0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget[i] > 0.0 && secs > budget[i]) o.require(false, fmt("runtime %.1f s over budget", secs));
    if (!o.pass) ++failed;
    std::printf("%s criterion %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
