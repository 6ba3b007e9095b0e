#include "chainscope/catalog.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "chainscope/errors.hpp"
#include "chainscope/symplectic.hpp"

namespace chainscope {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

template <class T>
T outer_f_impl(const T& x, double v) {
  const double shift = std::floor(v);
  const double y = v - shift;
  if (y >= 1.0 / 3.0 && y <= 2.0 / 3.0) return T(0.0);
  const T d = y < 1.0 / 3.0 ? T(1.0 / 3.0 + shift) - x : x - T(2.0 / 3.0 + shift);
  return d * d;
}

// g' = -f off the band and g' = (4/27) sin^2(3 pi (x - 1/3)) on it, so g is
// periodic and r dg stays in {H >= 0} for every r >= 0.
template <class T>
T outer_g_impl(const T& x, double v) {
  using std::sin;
  const double shift = std::floor(v - 1.0 / 3.0);
  const double y = v - shift;  // in [1/3, 4/3)
  const T s = x - T(shift);
  if (y <= 2.0 / 3.0) {
    const T a = s - T(1.0 / 3.0);
    return (4.0 / 27.0) * (0.5 * a - sin(6.0 * std::numbers::pi * a) / (12.0 * std::numbers::pi));
  }
  if (y <= 1.0) {
    const T a = s - T(2.0 / 3.0);
    return T(2.0 / 81.0) - a * a * a / 3.0;
  }
  const T a = T(4.0 / 3.0) - s;
  return a * a * a / 3.0;
}

FlowSystem reduced_flow(const HamiltonianSystem& H, const GridSpec& probe) {
  return zero_section_reduction(H, probe).Y;
}

}  // namespace

Jet outer_f(const Jet& x) { return outer_f_impl(x, x.value()); }
double outer_f(double x) { return outer_f_impl(x, x); }
Jet outer_g(const Jet& x) { return outer_g_impl(x, x.value()); }
double outer_g(double x) { return outer_g_impl(x, x); }

std::vector<std::string> catalog_labels() {
  return {"cantor-fat", "cantor-null", "rotation",    "gradient-circle", "mane",   "pps-example",
          "outer-example", "outer-x1", "pps-x1", "flow", "hamiltonian"};
}

FlowSystem expression_flow(const Torus& t, const std::vector<Expression>& comps, std::string label,
                           std::optional<double> lipschitz) {
  if (comps.size() != t.dims()) throw ConfigError("flow needs one expression per axis");
  for (const auto& e : comps)
    if (e.uses_y() || e.uses_r()) throw ConfigError("flow components may only depend on x1..xn");
  const std::size_t n = t.dims();
  FlowSystem f;
  f.torus = t;
  f.label = std::move(label);
  f.lipschitz_bound = lipschitz;
  f.field = [comps, n](const TorusPoint& x) {
    Expression::Bindings<double> b;
    for (std::size_t j = 0; j < n; ++j) b.x[j] = x[j];
    TorusPoint v;
    v.n = n;
    for (std::size_t j = 0; j < n; ++j) v[j] = comps[j].eval(b);
    return v;
  };
  f.jet_field = [comps, n](const JetVec& x) {
    Expression::Bindings<Jet> b;
    for (std::size_t j = 0; j < n; ++j) b.x[j] = x[j];
    JetVec v{};
    for (std::size_t j = 0; j < n; ++j) v[j] = comps[j].eval(b);
    return v;
  };
  return f;
}

HamiltonianSystem expression_hamiltonian(const Torus& t, const Expression& H, std::string label) {
  if (H.uses_r()) throw ConfigError("Hamiltonian may not depend on r");
  HamiltonianSystem h;
  h.torus = t;
  h.label = std::move(label);
  h.H = [H](const JetVec& x, const JetVec& y) {
    Expression::Bindings<Jet> b;
    b.x = x;
    b.y = y;
    return H.eval(b);
  };
  return h;
}

CatalogSystem load_system(const std::string& label, const Config& p) {
  CatalogSystem s;
  s.label = label;
  if (label == "cantor-fat" || label == "cantor-null") {
    const bool fat = label == "cantor-fat";
    CantorSpec spec = fat ? CantorSpec::fat(p.get_double("delta", 0.25), static_cast<std::size_t>(p.get_int("depth", 12)))
                          : CantorSpec::null(static_cast<std::size_t>(p.get_int("depth", 4)));
    CantorFlowOptions o;
    o.gain = p.get_double("gain", o.gain);
    o.exponent = p.get_double("exponent", o.exponent);
    s.flow = build_cantor_flow(spec, o);
    s.cantor = spec;
    s.cantor_options = o;
    s.default_grid = {2048};
    s.description = fat ? "circle flow vanishing exactly on a Cantor set of positive measure"
                        : "circle flow vanishing on the endpoints of a measure-zero Cantor approximant";
    return s;
  }
  if (label == "rotation") {
    const double a1 = p.get_double("alpha1", 1.0);
    const double a2 = p.get_double("alpha2", kGolden);
    s.flow.torus = Torus(2);
    s.flow.label = "rotation";
    s.flow.lipschitz_bound = 0.0;
    s.flow.field = [a1, a2](const TorusPoint&) { return TorusPoint{a1, a2}; };
    s.flow.jet_field = [a1, a2](const JetVec&) {
      JetVec v{};
      v[0] = Jet(a1);
      v[1] = Jet(a2);
      return v;
    };
    s.default_grid = {64, 32};
    s.transitive = !p.has("alpha1") && !p.has("alpha2");
    s.description = "linear flow on the 2-torus";
    return s;
  }
  if (label == "gradient-circle") {
    s.flow = expression_flow(Torus(1), {Expression::parse("-sin(2*pi*x1)", 1)}, label, 2.0 * std::numbers::pi);
    s.default_grid = {512};
    s.description = "V = -sin(2 pi x) on R/Z";
    return s;
  }
  if (label == "mane") {
    const Torus t(2);
    const bool custom = p.has("Y1") || p.has("Y2");
    if (custom) {
      s.flow = expression_flow(t, {Expression::parse(p.get("Y1", "0"), 2), Expression::parse(p.get("Y2", "0"), 2)},
                               "Y");
    } else {
      s.flow = load_system("rotation").flow;
    }
    s.hamiltonian = mane_hamiltonian(s.flow);
    s.default_grid = {64, 64};
    s.transitive = !custom;
    s.description = "H = |y|^2/2 + y.Y(x)";
    return s;
  }
  if (label == "pps-example" || label == "pps-x1") {
    const double P = p.get_double("period", 2.0 * std::numbers::pi);
    if (label == "pps-x1") {
      s.flow = expression_flow(Torus(1, P), {Expression::parse("-(1 - cos(2*x1))", 1)}, label, 2.0);
      s.default_grid = {2048};
      s.description = "x1-part of the reduced field of the first example";
      return s;
    }
    const Torus t(2, P);
    s.hamiltonian = expression_hamiltonian(
        t, Expression::parse("y1^2 + y2^2 - (1 - cos(2*x1))*y1 - y2", 2, true), label);
    s.flow = reduced_flow(*s.hamiltonian, GridSpec(t, {32, 32}));
    s.flow.lipschitz_bound = 2.0;
    s.flow.label = label;
    s.default_grid = {64, 64};
    s.description = "H = y1^2 + y2^2 - (1 - cos 2x1) y1 - y2";
    return s;
  }
  if (label == "outer-example" || label == "outer-x1") {
    if (label == "outer-x1") {
      s.flow.torus = Torus(1);
      s.flow.field = [](const TorusPoint& x) { return TorusPoint{-outer_f(x[0])}; };
      s.flow.jet_field = [](const JetVec& x) {
        JetVec v{};
        v[0] = -outer_f(x[0]);
        return v;
      };
      s.flow.lipschitz_bound = 2.0 / 3.0;
      s.flow.label = label;
      s.default_grid = {2048};
      s.description = "x1-part of the reduced field of the outer example, fixed on [1/3, 2/3]";
      return s;
    }
    const Torus t(2);
    HamiltonianSystem h;
    h.torus = t;
    h.label = label;
    h.H = [](const JetVec& x, const JetVec& y) {
      return y[0] * y[0] + y[1] * y[1] - outer_f(x[0]) * y[0] - y[1];
    };
    s.hamiltonian = h;
    s.flow = reduced_flow(h, GridSpec(t, {32, 32}));
    s.flow.lipschitz_bound = 2.0 / 3.0;
    s.flow.label = label;
    s.default_grid = {64, 64};
    s.description = "H = y1^2 + y2^2 - f(x1) y1 - y2 with f = dist(x1, [1/3, 2/3])^2";
    return s;
  }
  if (label == "flow") {
    const auto n = static_cast<std::size_t>(p.get_int("dims", 1));
    const Torus t(n, p.get_double("period", 1.0));
    std::vector<Expression> comps;
    for (std::size_t j = 0; j < n; ++j) {
      const std::string key = "V" + std::to_string(j + 1);
      if (!p.has(key)) throw ConfigError("flow system needs " + key);
      comps.push_back(Expression::parse(p.get(key, ""), n));
    }
    std::optional<double> lip;
    if (p.has("lipschitz")) lip = p.get_double("lipschitz", 0.0);
    s.flow = expression_flow(t, comps, label, lip);
    s.default_grid = std::vector<std::size_t>(n, n == 1 ? 1024 : 64);
    s.description = "user-supplied vector field";
    return s;
  }
  if (label == "hamiltonian") {
    const auto n = static_cast<std::size_t>(p.get_int("dims", 2));
    const Torus t(n, p.get_double("period", 1.0));
    if (!p.has("H")) throw ConfigError("hamiltonian system needs H");
    s.hamiltonian = expression_hamiltonian(t, Expression::parse(p.get("H", ""), n, true), label);
    s.hamiltonian->energy_level = p.get_double("c", 0.0);
    s.flow = reduced_flow(fiberwise_translate(*s.hamiltonian, OneForm::constant(t, std::vector<double>(n, 0.0))),
                          GridSpec(t, std::vector<std::size_t>(n, 16)));
    s.flow.label = label;
    s.default_grid = std::vector<std::size_t>(n, 64);
    s.description = "user-supplied Hamiltonian";
    return s;
  }
  throw ConfigError("unknown system label '" + label + "'");
}

}  // namespace chainscope
