#include "chainscope/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "chainscope/catalog.hpp"
#include "chainscope/chain_cost.hpp"
#include "chainscope/chain_graph.hpp"
#include "chainscope/errors.hpp"
#include "chainscope/lyapunov.hpp"
#include "chainscope/oracle.hpp"
#include "chainscope/parallel.hpp"
#include "chainscope/symplectic.hpp"

namespace chainscope {

using nlohmann::json;

const std::vector<std::string>& run_keys() {
  static const std::vector<std::string> keys{"system", "grid",   "ladder", "T",     "c_snap",  "ratio_max",
                                             "step",   "out",    "seed",   "potential", "family", "base",
                                             "samples", "c",     "threads"};
  return keys;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> counts;
  const std::string t = trim(text);
  if (t.empty() || t.front() == 'x' || t.back() == 'x' || t.find("xx") != std::string::npos)
    throw ConfigError("grid '" + text + "' must look like 2048 or 64x32");
  for (const auto& part : split(t, 'x')) {
    const std::string s = trim(part);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("grid '" + text + "' must look like 2048 or 64x32");
    const auto v = std::stoull(s);
    if (v < 2 || v > (1u << 24)) throw ConfigError("grid counts must lie in [2, 2^24]");
    counts.push_back(static_cast<std::size_t>(v));
  }
  if (counts.empty() || counts.size() > kMaxDims) throw ConfigError("grid '" + text + "' has a bad dimension");
  return counts;
}

std::vector<std::vector<std::size_t>> parse_ladder(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& level : split(text, ',')) out.push_back(parse_grid(level));
  return out;
}

RunConfig make_run_config(const std::string& command, const Config& s) {
  RunConfig c;
  c.command = command;
  c.system = s.get("system", "");
  if (s.has("grid")) c.grid = parse_grid(s.get("grid", ""));
  if (s.has("ladder")) c.ladder = parse_ladder(s.get("ladder", ""));
  c.T = s.get_double("T", c.T);
  c.thresholds.c_snap = s.get_double("c_snap", c.thresholds.c_snap);
  c.thresholds.ratio_max = s.get_double("ratio_max", c.thresholds.ratio_max);
  c.thresholds.step = s.get_double("step", 0.0);
  c.out = s.get("out", c.out);
  const long long seed = s.get_int("seed", 1);
  if (seed < 0) throw ConfigError("seed must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.potential = s.get("potential", "");
  c.family = s.get("family", "");
  c.base = s.get_doubles("base", {});
  const long long samples = s.get_int("samples", 1000);
  if (samples < 1) throw ConfigError("samples must be positive");
  c.samples = static_cast<std::size_t>(samples);
  if (s.has("c")) c.energy = s.get_double("c", 0.0);
  const long long threads = s.get_int("threads", 0);
  if (threads < 0) throw ConfigError("threads must be nonnegative");
  c.threads = static_cast<std::size_t>(threads);
  const auto& reserved = run_keys();
  for (const auto& [k, v] : s.entries())
    if (std::find(reserved.begin(), reserved.end(), k) == reserved.end()) c.params.set(k, v);
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> commands{"analyze", "lyapunov", "rigidity", "outer", "examples", "selftest"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    throw ConfigError("unknown subcommand '" + c.command + "'");
  auto positive = [](double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0)) throw ConfigError(std::string(what) + " must be positive and finite");
  };
  positive(c.T, "T");
  positive(c.thresholds.c_snap, "c_snap");
  positive(c.thresholds.ratio_max, "ratio_max");
  if (c.thresholds.ratio_max >= 1.0) throw ConfigError("ratio_max must be below 1");
  if (c.thresholds.step != 0.0) positive(c.thresholds.step, "step");
  if (c.thresholds.step > kMaxStep) throw ConfigError("step must not exceed 1e-3");
  if (c.energy && !std::isfinite(*c.energy)) throw ConfigError("c must be finite");
  for (double b : c.base)
    if (!std::isfinite(b)) throw ConfigError("base coordinates must be finite");
  const bool needs_system = c.command != "examples" && c.command != "selftest";
  if (needs_system && c.system.empty()) throw ConfigError(c.command + " needs --system");
}

namespace {

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["system"] = c.system;
  j["grid"] = c.grid;
  j["ladder"] = c.ladder;
  j["T"] = c.T;
  j["c_snap"] = c.thresholds.c_snap;
  j["ratio_max"] = c.thresholds.ratio_max;
  j["step"] = c.thresholds.step;
  j["seed"] = c.seed;
  j["potential"] = c.potential;
  j["family"] = c.family;
  j["base"] = c.base;
  j["samples"] = c.samples;
  if (c.energy) j["c"] = *c.energy;
  j["params"] = c.params.entries();
  return j;
}

std::vector<std::string> coord_columns(std::size_t n) {
  std::vector<std::string> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back("x" + std::to_string(j + 1));
  return cols;
}

std::vector<double> coords(const GridSpec& g, std::size_t node) { return g.point(node).to_vector(); }

GridSpec grid_for(const RunConfig& cfg, const CatalogSystem& cs) {
  const auto counts = cfg.grid.empty() ? cs.default_grid : cfg.grid;
  if (counts.size() != cs.flow.torus.dims())
    throw ConfigError("grid has " + std::to_string(counts.size()) + " axes, system " + cs.label + " has " +
                      std::to_string(cs.flow.torus.dims()));
  return GridSpec(cs.flow.torus, counts);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------- analyze

RunResult analyze(const RunConfig& cfg) {
  const CatalogSystem cs = load_system(cfg.system, cfg.params);
  std::vector<GridSpec> ladder;
  if (!cfg.ladder.empty()) {
    for (const auto& counts : cfg.ladder) {
      if (counts.size() != cs.flow.torus.dims()) throw ConfigError("ladder level has the wrong dimension");
      ladder.emplace_back(cs.flow.torus, counts);
    }
  } else {
    const GridSpec g = grid_for(cfg, cs);
    const std::size_t levels = g.dims() == 1 ? 3 : 2;
    std::vector<std::size_t> counts = g.counts();
    for (std::size_t k = 0; k < levels; ++k) {
      ladder.emplace_back(cs.flow.torus, counts);
      for (auto& n : counts) n *= 2;
    }
  }
  if (ladder.size() < 2) throw ConfigError("the ladder needs at least two resolutions");
  const RecurrenceReport rep = scr_classify(cs.flow, ladder, cfg.T, cfg.thresholds);
  const GridSpec& coarse = ladder.front();
  const std::size_t L = ladder.size();

  CsvTable nodes;
  nodes.name = "nodes";
  nodes.columns = coord_columns(coarse.dims());
  nodes.columns.push_back("class");
  for (std::size_t k = 0; k < L; ++k) {
    nodes.columns.push_back("loop_cost_" + std::to_string(k));
    nodes.columns.push_back("hops_" + std::to_string(k));
    nodes.columns.push_back("bottleneck_" + std::to_string(k));
  }
  for (const auto& n : rep.nodes) {
    std::vector<double> row = coords(coarse, n.node);
    row.push_back(static_cast<double>(n.cls));
    for (std::size_t k = 0; k < L; ++k) {
      row.push_back(n.loop_cost[k]);
      row.push_back(static_cast<double>(n.loop_hops[k]));
      row.push_back(n.bottleneck_cost[k]);
    }
    nodes.add_row(std::move(row));
  }

  RunResult res;
  res.report.command = "analyze";
  json& s = res.report.summary;
  s["config"] = config_json(cfg);
  s["system"] = cs.label;
  s["description"] = cs.description;
  for (const auto& g : ladder) s["ladder"].push_back(g.counts());
  s["h"] = rep.h;
  const auto scr = rep.nodes_of(RecurrenceClass::scr);
  const auto cr = rep.nodes_of(RecurrenceClass::cr_only);
  const auto non = rep.nodes_of(RecurrenceClass::non_recurrent);
  s["counts"] = {{"scr_candidate", scr.size()}, {"cr_only_candidate", cr.size()}, {"non_recurrent", non.size()}};
  s["class_codes"] = {{"0", to_string(RecurrenceClass::scr)},
                      {"1", to_string(RecurrenceClass::cr_only)},
                      {"2", to_string(RecurrenceClass::non_recurrent)}};
  double max_loop = 0.0;
  for (const auto& n : rep.nodes) max_loop = std::max(max_loop, n.loop_cost.back());
  s["max_loop_cost_finest"] = max_loop;

  std::ostringstream text;
  text << "analyze " << cs.label << "  T=" << fmt(cfg.T) << "  ladder";
  for (const auto& g : ladder) {
    text << ' ';
    for (std::size_t j = 0; j < g.dims(); ++j) text << (j ? "x" : "") << g.count(j);
  }
  text << "\n  SCR-candidate " << scr.size() << "  CR-only " << cr.size() << "  non-recurrent " << non.size()
       << "  (of " << rep.nodes.size() << " coarse nodes)\n";
  if (cs.cantor) {
    const CantorProfile prof(*cs.cantor, cs.cantor_options.value_or(CantorFlowOptions{}));
    std::size_t near = 0;
    for (auto u : scr)
      if (prof.dist(coarse.point(u)[0]) <= coarse.h_max()) ++near;
    s["zero_set_measure"] = cs.cantor->measure();
    s["scr_within_h_of_zero_set"] = near;
    text << "  zero-set measure " << fmt(cs.cantor->measure()) << ", SCR-candidates within h of it: " << near << "/"
         << scr.size() << "\n";
  }
  text << "  max loop cost at finest level " << fmt(max_loop) << "\n";

  PlotSpec plot{"loop_cost", "loop cost L_T(x,x) per resolution", "x1", "L_T(x,x)", {}};
  for (std::size_t k = 0; k < L; ++k)
    plot.series.push_back({"nodes", "x1", "loop_cost_" + std::to_string(k), "level " + std::to_string(k), "lines"});
  res.report.tables.push_back(std::move(nodes));
  res.report.plots.push_back(std::move(plot));
  res.text = text.str();
  return res;
}

// ---------------------------------------------------------------- lyapunov

RunResult lyapunov(const RunConfig& cfg) {
  const CatalogSystem cs = load_system(cfg.system, cfg.params);
  const GridSpec grid = grid_for(cfg, cs);
  std::size_t base = 0;
  if (!cfg.base.empty()) {
    if (cfg.base.size() != grid.dims()) throw ConfigError("base needs one coordinate per axis");
    base = grid.nearest(cs.flow.torus.reduce(TorusPoint(cfg.base)));
  }
  const double step = cfg.thresholds.step;
  const ChainGraph g = build_chain_graph(cs.flow, grid, cfg.T, {}, 0.0, step);
  const SynthResult syn = synth_lyapunov(g, cs.flow, base, cfg.T, 65, step);
  VerifyOptions vo;
  vo.n_random = cfg.samples;
  vo.seed = cfg.seed;
  vo.tol = 2.0 * cfg.thresholds.c_snap * grid.h_max();
  vo.step = step;
  const LyapunovVerdict v = verify_lyapunov(syn.h, cs.flow, vo);

  std::vector<char> neutral(grid.size(), 0);
  for (auto u : v.neutral_set_nodes) neutral[u] = 1;
  CsvTable field;
  field.name = "field";
  field.columns = coord_columns(grid.dims());
  for (const char* c : {"h_tilde", "h", "hops", "neutral"}) field.columns.push_back(c);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto row = coords(grid, i);
    row.push_back(syn.tilde[i]);
    row.push_back(syn.h[i]);
    row.push_back(static_cast<double>(syn.cost.hops[i]));
    row.push_back(neutral[i]);
    field.add_row(std::move(row));
  }

  RunResult res;
  res.report.command = "lyapunov";
  json& s = res.report.summary;
  s["config"] = config_json(cfg);
  s["system"] = cs.label;
  s["base_node"] = base;
  s["base_point"] = grid.point(base).to_vector();
  s["grid"] = grid.counts();
  s["tau"] = syn.tau_hop;
  s["sampling_error"] = syn.sampling_error;
  s["verdict"] = {{"is_lyapunov", v.is_lyapunov},   {"is_first_integral", v.is_first_integral},
                  {"is_constant", v.is_constant},   {"max_increase", v.max_increase},
                  {"max_drift", v.max_drift},       {"max_dhV", v.max_dhV},
                  {"range", v.range},               {"tol", v.tol},
                  {"neutral_nodes", v.neutral_set_nodes.size()}};
  res.status = v.is_lyapunov ? kExitOk : kExitVerificationFailed;

  std::ostringstream text;
  text << "lyapunov " << cs.label << "  base node " << base << "  T=" << fmt(cfg.T) << "\n"
       << "  lyapunov " << (v.is_lyapunov ? "yes" : "NO") << "  first integral " << (v.is_first_integral ? "yes" : "no")
       << "  constant " << (v.is_constant ? "yes" : "no") << "\n"
       << "  max increase " << fmt(v.max_increase) << " (tol " << fmt(v.tol) << ")  range " << fmt(v.range)
       << "  neutral nodes " << v.neutral_set_nodes.size() << "/" << grid.size() << "\n";
  res.text = text.str();

  PlotSpec plot{"field", "synthesized Lyapunov function", "x1", "value",
                {{"field", "x1", "h_tilde", "h~ = L_T(base, .)", "lines"}, {"field", "x1", "h", "h", "lines"}}};
  res.report.tables.push_back(std::move(field));
  res.report.plots.push_back(std::move(plot));
  return res;
}

// ---------------------------------------------------------------- rigidity

RunResult rigidity(const RunConfig& cfg) {
  const CatalogSystem cs = load_system(cfg.system, cfg.params);
  if (!cs.hamiltonian) throw ConfigError("system " + cs.label + " has no Hamiltonian");
  const HamiltonianSystem& H = *cs.hamiltonian;
  const double c = cfg.energy.value_or(H.energy_level);
  const GridSpec grid = grid_for(cfg, cs);
  const Expression ue = Expression::parse(cfg.potential.empty() ? "0" : cfg.potential, grid.dims());
  const Potential u = Potential::from_expression(ue);
  const SublevelReport rep = sublevel_check(H, c, u, grid);

  CsvTable tab;
  tab.name = "sublevel";
  tab.columns = coord_columns(grid.dims());
  tab.columns.push_back("s");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TorusPoint x = grid.point(i);
    auto row = x.to_vector();
    row.push_back(H.value(x, u.gradient(x, grid.torus())) - c);
    tab.add_row(std::move(row));
  }

  RunResult res;
  res.report.command = "rigidity";
  json& s = res.report.summary;
  s["config"] = config_json(cfg);
  s["system"] = cs.label;
  s["energy"] = c;
  s["potential"] = ue.text();
  s["sublevel"] = {{"min", rep.min},
                   {"max", rep.max},
                   {"argmin", rep.argmin_point.to_vector()},
                   {"verdict", rep.verdict},
                   {"inside_closure", rep.inside_closure},
                   {"outside", rep.outside}};
  std::ostringstream text;
  text << "rigidity " << cs.label << "  c=" << fmt(c) << "  u=" << ue.text() << "\n"
       << "  s = H(x,du) - c: min " << fmt(rep.min) << "  max " << fmt(rep.max) << "\n"
       << "  verdict: " << rep.verdict << "\n";

  const HamiltonianSystem Ht = fiberwise_translate(H, OneForm::constant(H.torus, std::vector<double>(grid.dims(), 0.0)), c);
  try {
    const ZeroSectionReduction red = zero_section_reduction(Ht, GridSpec(H.torus, std::vector<std::size_t>(grid.dims(), 16)));
    const InnerProbe probe = inner_rigidity_probe(Ht, red, u, grid, cs.transitive);
    s["reduction"] = {{"max_zero_section", red.max_zero_section}, {"min_F", red.min_F}};
    s["inner_probe"] = {{"containment", probe.containment}, {"applicable", probe.applicable},
                        {"first_integral", probe.first_integral}, {"max_F", probe.max_F},
                        {"sup_du", probe.sup_du}, {"pass", probe.pass}, {"summary", probe.summary}};
    text << "  inner rigidity probe: " << probe.summary << "\n";
    if (!probe.pass) res.status = kExitVerificationFailed;
  } catch (const GeometryError& e) {
    s["reduction"] = {{"error", e.what()}};
    text << "  zero-section reduction unavailable: " << e.what() << "\n";
  }
  res.text = text.str();
  if (grid.dims() >= 1) {
    PlotSpec plot{"sublevel", "H(x, du(x)) - c", "x1", "s", {{"sublevel", "x1", "s", "s", "points"}}};
    res.report.plots.push_back(std::move(plot));
  }
  res.report.tables.push_back(std::move(tab));
  return res;
}

// ---------------------------------------------------------------- outer

Config family_settings(const std::string& spec) {
  if (spec.empty()) throw ConfigError("outer needs --family (config file or inline 'u=...;r=...')");
  if (std::filesystem::exists(spec)) return Config::load(spec);
  std::string text = spec;
  std::replace(text.begin(), text.end(), ';', '\n');
  if (text.find('=') == std::string::npos) throw ConfigError("family '" + spec + "' is neither a file nor key=value text");
  return Config::parse(text);
}

RunResult outer(const RunConfig& cfg) {
  const CatalogSystem cs = load_system(cfg.system, cfg.params);
  if (!cs.hamiltonian) throw ConfigError("system " + cs.label + " has no Hamiltonian");
  const GridSpec grid = grid_for(cfg, cs);
  const std::size_t n = grid.dims();
  const Config fc = family_settings(cfg.family);
  DeformationFamily fam;
  fam.r = fc.get_doubles("r", {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0});
  std::string family_label;
  if (fc.has("u")) {
    fam = DeformationFamily::from_expression(Expression::parse(fc.get("u", ""), n, false, true), fam.r);
    family_label = fc.get("u", "");
  } else if (fc.get("profile", "") == "outer-g") {
    const double order = static_cast<double>(fc.get_int("order", 1));
    const double scale = fc.get_double("scale", 1.0);
    fam.u = [order, scale](const JetVec& x, double r) { return (scale * std::pow(r, order)) * outer_g(x[0]); };
    family_label = "r^" + std::to_string(static_cast<int>(order)) + " * outer-g";
  } else {
    throw ConfigError("family needs 'u = <expression in x and r>' or 'profile = outer-g'");
  }
  fam.label = family_label;
  const std::vector<double> check_r = fc.get_doubles("check_r", {0.1, 0.5, 1.0});
  const HamiltonianSystem& H = *cs.hamiltonian;
  const double c = cfg.energy.value_or(H.energy_level);

  RunResult res;
  res.report.command = "outer";
  json& s = res.report.summary;
  s["config"] = config_json(cfg);
  s["system"] = cs.label;
  s["family"] = family_label;
  s["r"] = fam.r;
  std::ostringstream text;
  text << "outer " << cs.label << "  family " << family_label << "\n";

  bool admissible = true;
  for (double r : check_r) {
    auto ufn = fam.u;
    const Potential u = Potential::from_jet([ufn, r](const JetVec& x) { return ufn(x, r); });
    const SublevelReport rep = sublevel_check(H, c, u, grid);
    s["sublevel"].push_back({{"r", r}, {"min", rep.min}, {"verdict", rep.verdict}});
    admissible = admissible && rep.outside;
    text << "  r=" << fmt(r) << "  min H(x,du_r) - c = " << fmt(rep.min) << "  " << rep.verdict << "\n";
  }
  s["admissible"] = admissible;

  OuterOptions oo;
  oo.verify.n_random = cfg.samples;
  oo.verify.seed = cfg.seed;
  oo.verify.neutral_set = false;
  const OuterResult o = outer_leading_term(fam, cs.flow, grid, oo);
  s["degenerate"] = o.degenerate;
  if (o.degenerate) {
    s["notice"] = o.notice;
    text << "  " << o.notice << "\n";
  } else {
    s["order"] = o.order;
    s["slope"] = o.slope;
    s["residual"] = o.residual;
    s["norms"] = o.norms;
    s["min_dvY"] = o.min_dvY;
    s["dvY_nonnegative"] = o.dvY_nonnegative;
    s["v_constant"] = o.v_constant;
    s["minus_v_is_lyapunov"] = o.minus_v->is_lyapunov;
    text << "  order " << o.order << " (slope " << fmt(o.slope) << ")  min dv.Y " << fmt(o.min_dvY) << "  v "
         << (o.v_constant ? "constant" : "non-constant") << "  -v Lyapunov " << (o.minus_v->is_lyapunov ? "yes" : "no")
         << "\n";
    CsvTable vt;
    vt.name = "leading_term";
    vt.columns = coord_columns(n);
    vt.columns.push_back("v");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto row = coords(grid, i);
      row.push_back((*o.v)[i]);
      vt.add_row(std::move(row));
    }
    res.report.tables.push_back(std::move(vt));
    res.report.plots.push_back({"leading_term", "leading term v of the family", "x1", "v",
                                {{"leading_term", "x1", "v", "v", "points"}}});
  }
  // An admissible family must have dv.Y >= 0; on a strongly chain transitive
  // reduced flow it must in addition be trivial.
  bool consistent = true;
  if (admissible && !o.degenerate) {
    consistent = o.dvY_nonnegative;
    if (cs.transitive) consistent = consistent && o.v_constant;
  }
  s["mechanism_consistent"] = consistent;
  if (!consistent) res.status = kExitVerificationFailed;
  text << "  mechanism " << (consistent ? "consistent" : "VIOLATED") << "\n";
  res.text = text.str();
  return res;
}

// ---------------------------------------------------------------- examples

RunResult examples(const RunConfig& cfg) {
  RunResult res;
  res.report.command = "examples";
  res.report.summary["config"] = config_json(cfg);
  std::ostringstream text;
  for (const auto& label : catalog_labels()) {
    Config p;
    if (label == "flow") {
      p.set("dims", "1");
      p.set("V1", "1");
    } else if (label == "hamiltonian") {
      p.set("dims", "1");
      p.set("H", "y1^2/2 + y1");
    }
    const CatalogSystem cs = load_system(label, p);
    json e = {{"label", label},
              {"description", cs.description},
              {"dims", cs.flow.torus.dims()},
              {"periods", cs.flow.torus.periods()},
              {"default_grid", cs.default_grid},
              {"hamiltonian", cs.hamiltonian.has_value()},
              {"transitive", cs.transitive}};
    res.report.summary["systems"].push_back(e);
    text << "  " << label << std::string(label.size() < 16 ? 16 - label.size() : 1, ' ') << cs.description << "\n";
  }
  res.text = "catalog systems:\n" + text.str();
  return res;
}

// ---------------------------------------------------------------- selftest

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::vector<Check> selftest_checks(std::uint64_t seed) {
  std::vector<Check> checks;
  checks.push_back({"torus metric axioms", [seed] {
                      std::mt19937_64 rng(seed);
                      std::uniform_real_distribution<double> U(-3.0, 3.0);
                      const Torus t(std::vector<double>{1.0, 2.0 * std::numbers::pi});
                      for (int i = 0; i < 2000; ++i) {
                        TorusPoint a{U(rng), U(rng)}, b{U(rng), U(rng)}, c{U(rng), U(rng)};
                        const double ab = torus_distance(a, b, t), bc = torus_distance(b, c, t),
                                     ac = torus_distance(a, c, t);
                        if (ab != torus_distance(b, a, t) || torus_distance(a, a, t) != 0.0 || ab < 0.0)
                          return std::pair{false, std::string("symmetry or identity fails")};
                        if (ac > ab + bc) return std::pair{false, std::string("triangle inequality fails")};
                      }
                      return std::pair{true, std::string("2000 triples")};
                    }});
  checks.push_back({"chain cost equals exhaustive enumeration", [seed] {
                      std::mt19937_64 rng(seed);
                      for (int i = 0; i < 40; ++i) {
                        const auto sys = oracle::FiniteChainSystem::random(2 + rng() % 8, rng);
                        const ChainGraph g = sys.induced_graph();
                        for (std::size_t x = 0; x < sys.n; ++x) {
                          const auto brute = oracle::brute_chain_costs(sys, x);
                          const auto field = chain_cost(g, x);
                          if (brute != field.values) return std::pair{false, "instance " + std::to_string(i)};
                        }
                      }
                      return std::pair{true, std::string("40 instances")};
                    }});
  checks.push_back({"cost field properties", [] {
                      const CatalogSystem cs = load_system("gradient-circle");
                      const GridSpec grid(cs.flow.torus, {256});
                      const ChainGraph g = build_chain_graph(cs.flow, grid, 1.0);
                      const CostField f = chain_cost(g, 37);
                      const double tau = f.tau();
                      for (std::size_t k = 0; k < g.flow_times().size(); ++k)
                        if (f.values[grid.nearest(g.endpoint(37, k))] > tau)
                          return std::pair{false, std::string("flow image not reached for free")};
                      for (std::size_t y = 0; y < grid.size(); ++y) {
                        const std::size_t z = grid.shift(y, 0, 1);
                        if (std::fabs(f.values[y] - f.values[z]) > grid.spacing(0) + tau)
                          return std::pair{false, std::string("not 1-Lipschitz in the target")};
                      }
                      return std::pair{true, std::string("grid 256")};
                    }});
  checks.push_back({"fat Cantor measure", [] {
                      const CantorSpec s = CantorSpec::fat(0.25, 12);
                      const double m = s.measure();
                      return std::pair{std::fabs(m - 0.25) <= 1e-9, "measure " + fmt(m)};
                    }});
  checks.push_back({"explicit Cantor Lyapunov function", [seed] {
                      const CantorSpec spec = CantorSpec::fat(0.25, 12);
                      const FlowSystem sys = build_cantor_flow(spec);
                      const ExplicitCantorLyapunov h(spec);
                      VerifyOptions o;
                      o.n_random = 200;
                      o.seed = seed;
                      o.neutral_set = false;
                      const auto v = verify_lyapunov([&h](const TorusPoint& x) { return h(x[0]); },
                                                     GridSpec(sys.torus, {1024}), sys, o);
                      return std::pair{v.is_lyapunov && !v.is_first_integral, "max increase " + fmt(v.max_increase)};
                    }});
  checks.push_back({"first example identity", [] {
                      const CatalogSystem cs = load_system("pps-example");
                      const Potential u = Potential::from_expression(Expression::parse("-2*cos(x1)", 2));
                      const GridSpec grid(cs.hamiltonian->torus, {64, 64});
                      double worst = 0.0;
                      for (std::size_t i = 0; i < grid.size(); ++i) {
                        const TorusPoint x = grid.point(i);
                        const double sn = std::sin(x[0]);
                        const double s = cs.hamiltonian->value(x, u.gradient(x, grid.torus()));
                        worst = std::max(worst, std::fabs(s - 4.0 * sn * sn * (1.0 - sn)));
                      }
                      return std::pair{worst <= 1e-9, "max error " + fmt(worst)};
                    }});
  checks.push_back({"Liouville class of a mixed form", [] {
                      const Torus t(2);
                      const OneForm f = OneForm::from_expressions(
                          t, {Expression::parse("0.7 + sin(2*pi*x1)", 2), Expression::parse("-0.2 + cos(2*pi*x2)", 2)});
                      const auto cls = liouville_class(f, GridSpec(t, {32, 32}));
                      const bool ok = std::fabs(cls.components[0] - 0.7) <= 1e-6 && std::fabs(cls.components[1] + 0.2) <= 1e-6;
                      return std::pair{ok, "(" + fmt(cls.components[0]) + ", " + fmt(cls.components[1]) + ")"};
                    }});
  checks.push_back({"Mane reduction round trip", [] {
                      const CatalogSystem cs = load_system("mane", Config::parse("Y1 = 0.3 + sin(2*pi*x2)\nY2 = 0.7"));
                      const GridSpec probe(cs.flow.torus, {12, 12});
                      const auto red = zero_section_reduction(*cs.hamiltonian, probe);
                      double worst = 0.0;
                      for (std::size_t i = 0; i < probe.size(); ++i) {
                        const auto a = red.Y.eval(probe.point(i)), b = cs.flow.eval(probe.point(i));
                        worst = std::max({worst, std::fabs(a[0] - b[0]), std::fabs(a[1] - b[1])});
                      }
                      return std::pair{worst <= 1e-12, "max deviation " + fmt(worst)};
                    }});
  return checks;
}

RunResult selftest(const RunConfig& cfg) {
  RunResult res;
  res.report.command = "selftest";
  res.report.summary["config"] = config_json(cfg);
  std::ostringstream text;
  bool all = true;
  for (const auto& c : selftest_checks(cfg.seed)) {
    bool ok = false;
    std::string detail;
    try {
      std::tie(ok, detail) = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    all = all && ok;
    res.report.summary["checks"].push_back({{"name", c.name}, {"pass", ok}, {"detail", detail}});
    text << (ok ? "PASS " : "FAIL ") << c.name << "  (" << detail << ")\n";
  }
  res.report.summary["pass"] = all;
  res.status = all ? kExitOk : kExitVerificationFailed;
  res.text = text.str();
  return res;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.threads > 0) set_worker_count(cfg.threads);
  if (cfg.command == "analyze") return analyze(cfg);
  if (cfg.command == "lyapunov") return lyapunov(cfg);
  if (cfg.command == "rigidity") return rigidity(cfg);
  if (cfg.command == "outer") return outer(cfg);
  if (cfg.command == "examples") return examples(cfg);
  return selftest(cfg);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    RunResult r = execute(cfg);
    r.report.summary["status"] = r.status;
    r.report.write(cfg.out);
    out << r.text;
    return r.status;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const GeometryError& e) {
    err << "geometry error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const AnalyticityError& e) {
    err << "analyticity error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericError;
  }
}

}  // namespace chainscope
