#include "chainscope/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "chainscope/errors.hpp"
#include "chainscope/parallel.hpp"

namespace chainscope {

TorusPoint OneForm::eval(const TorusPoint& x) const {
  const JetVec v = theta(constant_jets(x));
  TorusPoint out;
  out.n = torus.dims();
  for (std::size_t j = 0; j < out.n; ++j) out[j] = v[j].value();
  return out;
}

OneForm OneForm::constant(const Torus& t, const std::vector<double>& c) {
  if (c.size() != t.dims()) throw InputError("constant form has wrong number of components");
  JetVec cj{};
  for (std::size_t j = 0; j < c.size(); ++j) cj[j] = Jet(c[j]);
  OneForm f;
  f.torus = t;
  f.theta = [cj](const JetVec&) { return cj; };
  f.label = "constant";
  return f;
}

OneForm OneForm::exact(const Torus& t, JetScalarFn u, std::string label) {
  const std::size_t n = std::min(t.dims(), kMaxDims);
  OneForm f{t, nullptr, u, std::move(label)};
  // Components carry no derivatives; exact forms are closed by construction.
  f.theta = [u, n](const JetVec& x) {
    JetVec seeded{};
    for (std::size_t j = 0; j < kMaxDims; ++j)
      if (j < n) seeded[j] = Jet::variable(x[j].value(), j, n);
    const Jet val = u(seeded);
    JetVec out{};
    for (std::size_t j = 0; j < n; ++j) out[j] = Jet(val.d(j));
    return out;
  };
  return f;
}

OneForm OneForm::exact_expression(const Torus& t, const Expression& u) {
  std::vector<Expression> comps;
  for (std::size_t j = 0; j < t.dims(); ++j) comps.push_back(u.derivative_x(j));
  OneForm f = from_expressions(t, comps);
  f.potential = Potential::from_expression(u).jet;
  f.label = "d(" + u.text() + ")";
  return f;
}

OneForm OneForm::from_expressions(const Torus& t, const std::vector<Expression>& comps) {
  if (comps.size() != t.dims()) throw InputError("one-form needs one expression per axis");
  const std::size_t n = t.dims();
  OneForm f;
  f.torus = t;
  f.label = "expression";
  f.theta = [comps, n](const JetVec& x) {
    Expression::Bindings<Jet> b;
    for (std::size_t j = 0; j < n; ++j) b.x[j] = x[j];
    JetVec out{};
    for (std::size_t j = 0; j < n; ++j) out[j] = comps[j].eval(b);
    return out;
  };
  return f;
}

OneForm OneForm::sum(const OneForm& a, const OneForm& b) {
  if (!(a.torus == b.torus)) throw InputError("one-forms live on different tori");
  OneForm f;
  f.torus = a.torus;
  f.label = a.label + "+" + b.label;
  const std::size_t n = a.torus.dims();
  auto ta = a.theta, tb = b.theta;
  f.theta = [ta, tb, n](const JetVec& x) {
    JetVec p = ta(x), q = tb(x);
    for (std::size_t j = 0; j < n; ++j) p[j] += q[j];
    return p;
  };
  if (a.potential && b.potential) {
    auto ua = a.potential, ub = b.potential;
    f.potential = [ua, ub](const JetVec& x) { return ua(x) + ub(x); };
  }
  return f;
}

double curl_defect(const OneForm& form, const GridSpec& probe) {
  if (!(form.torus == probe.torus())) throw InputError("probe grid is on a different torus");
  if (form.potential) return 0.0;
  const std::size_t n = probe.dims();
  double worst = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const JetVec th = form.theta(seeded_jets(probe.point(i), 0, n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) worst = std::max(worst, std::fabs(th[j].d(k) - th[k].d(j)));
  }
  return worst;
}

LiouvilleClass liouville_class(const OneForm& form, const GridSpec& probe) {
  const double curl = curl_defect(form, probe);
  if (!(curl <= kCurlTolerance))
    throw GeometryError("one-form is not closed: curl defect " + std::to_string(curl));
  const std::size_t n = probe.dims();
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const TorusPoint v = form.eval(probe.point(i));
    for (std::size_t j = 0; j < n; ++j) acc[j] += v[j];
  }
  for (double& a : acc) a /= static_cast<double>(probe.size());
  return {acc};
}

OneForm translate_graph(const OneForm& eta, const OneForm& theta) {
  if (!(eta.torus == theta.torus)) throw InputError("one-forms live on different tori");
  // sigma(x, eta(x)) = (x, eta(x) + theta(x)): the image is again a graph.
  OneForm out = OneForm::sum(eta, theta);
  out.label = "sigma_" + theta.label + "(" + eta.label + ")";
  return out;
}

HamiltonianSystem fiberwise_translate(const HamiltonianSystem& H, const OneForm& theta, std::optional<double> c) {
  if (!(H.torus == theta.torus)) throw InputError("one-form and Hamiltonian live on different tori");
  const double level = c.value_or(H.energy_level);
  const std::size_t n = H.torus.dims();
  auto h = H.H;
  auto th = theta.theta;
  HamiltonianSystem out;
  out.torus = H.torus;
  out.energy_level = 0.0;
  out.label = H.label + " translated by " + theta.label;
  out.H = [h, th, n, level](const JetVec& x, const JetVec& y) {
    const JetVec t = th(x);
    JetVec yy = y;
    for (std::size_t j = 0; j < n; ++j) yy[j] += t[j];
    return h(x, yy) - Jet(level);
  };
  return out;
}

ZeroSectionReduction zero_section_reduction(const HamiltonianSystem& Ht, const GridSpec& probe,
                                            const ReductionOptions& opts) {
  if (!(Ht.torus == probe.torus())) throw InputError("probe grid is on a different torus");
  const std::size_t n = Ht.torus.dims();
  const TorusPoint zero = TorusPoint::zeros(n);
  ZeroSectionReduction red;
  for (std::size_t i = 0; i < probe.size(); ++i)
    red.max_zero_section = std::max(red.max_zero_section, std::fabs(Ht.value(probe.point(i), zero)));
  if (!(red.max_zero_section <= opts.zero_tol))
    throw GeometryError("Hamiltonian does not vanish on the zero section (max |H~(x,0)| = " +
                        std::to_string(red.max_zero_section) + ")");

  auto hs = std::make_shared<const HamiltonianSystem>(Ht);
  red.Y.torus = Ht.torus;
  red.Y.label = "Y(" + Ht.label + ")";
  red.Y.field = [hs, zero](const TorusPoint& x) {
    TorusPoint dx, dy;
    hs->gradients(x, zero, dx, dy);
    return dy;
  };
  auto Yf = red.Y.field;
  red.F = [hs, Yf](const TorusPoint& x, const TorusPoint& y) {
    const TorusPoint Y = Yf(x);
    double dot = 0.0;
    for (std::size_t j = 0; j < y.n; ++j) dot += y[j] * Y[j];
    return hs->value(x, y) - dot;
  };

  const std::size_t m = std::max<std::size_t>(2, opts.y_per_axis);
  std::size_t fiber = 1;
  for (std::size_t j = 0; j < n; ++j) fiber *= m;
  double minF = kInfinity;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const TorusPoint x = probe.point(i);
    for (std::size_t k = 0; k < fiber; ++k) {
      TorusPoint y = TorusPoint::zeros(n);
      std::size_t rest = k;
      for (std::size_t j = 0; j < n; ++j) {
        y[j] = -opts.y_radius + 2.0 * opts.y_radius * static_cast<double>(rest % m) / static_cast<double>(m - 1);
        rest /= m;
      }
      const double F = red.F(x, y);
      if (F < minF) minF = F;
      if (F < -opts.convexity_tol)
        throw ConvexityError("F = H~ - y.Y is negative (" + std::to_string(F) + ") at a probe point");
    }
  }
  red.min_F = minF;
  return red;
}

Potential Potential::from_expression(const Expression& e) {
  if (e.uses_y() || e.uses_r()) throw ConfigError("potential may only depend on x1..xn");
  Potential p;
  p.jet = [e](const JetVec& x) {
    Expression::Bindings<Jet> b;
    b.x = x;
    return e.eval(b);
  };
  return p;
}

Potential Potential::from_jet(JetScalarFn f) {
  Potential p;
  p.jet = std::move(f);
  return p;
}

double Potential::value(const TorusPoint& x) const {
  if (jet) return jet(constant_jets(x)).value();
  return plain(x);
}

TorusPoint Potential::gradient(const TorusPoint& x, const Torus& t) const {
  const std::size_t n = t.dims();
  TorusPoint g = TorusPoint::zeros(n);
  if (jet) {
    const Jet v = jet(seeded_jets(x, 0, n));
    for (std::size_t j = 0; j < n; ++j) g[j] = v.d(j);
    return g;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double d = 1e-4 * t.period(j);
    TorusPoint a = x, b = x;
    a[j] += d;
    b[j] -= d;
    g[j] = (plain(a) - plain(b)) / (2.0 * d);
  }
  return g;
}

SublevelReport sublevel_check(const HamiltonianSystem& H, double c, const Potential& u, const GridSpec& grid,
                              double tol) {
  if (!(H.torus == grid.torus())) throw InputError("grid is on a different torus");
  const std::size_t N = grid.size();
  std::vector<double> s(N);
  parallel_for(N, [&](std::size_t i) {
    const TorusPoint x = grid.point(i);
    s[i] = H.value(x, u.gradient(x, H.torus)) - c;
  });
  SublevelReport r;
  const auto mn = std::min_element(s.begin(), s.end());
  r.min = *mn;
  r.max = *std::max_element(s.begin(), s.end());
  r.argmin = static_cast<std::size_t>(mn - s.begin());
  r.argmin_point = grid.point(r.argmin);
  r.inside_closure = r.max <= tol;
  r.outside = r.min >= -tol;
  if (r.inside_closure && r.outside) r.verdict = "contained in Σ";
  else if (r.outside) r.verdict = r.min <= tol ? "outside closure(U_Σ) boundary-touching" : "outside closure(U_Σ)";
  else if (r.inside_closure) r.verdict = r.max >= -tol ? "inside closure(U_Σ) boundary-touching" : "inside U_Σ";
  else r.verdict = "crosses Σ";
  return r;
}

DeformationFamily DeformationFamily::from_expression(const Expression& e, std::vector<double> r) {
  if (e.uses_y()) throw ConfigError("family may only depend on x1..xn and r");
  DeformationFamily f;
  f.r = std::move(r);
  f.label = e.text();
  f.u = [e](const JetVec& x, double rr) {
    Expression::Bindings<Jet> b;
    b.x = x;
    b.r = Jet(rr);
    return e.eval(b);
  };
  return f;
}

OuterResult outer_leading_term(const DeformationFamily& fam, const FlowSystem& Y, const GridSpec& grid,
                               const OuterOptions& opts) {
  if (!(Y.torus == grid.torus())) throw InputError("grid is on a different torus");
  std::vector<double> r = fam.r;
  std::sort(r.begin(), r.end());
  if (r.size() < 4) throw ConfigError("order fit needs at least four parameter samples");
  if (!(r.front() > 0.0)) throw ConfigError("parameter samples must be positive");
  if (r.back() / r.front() < 10.0 - 1e-12) throw ConfigError("parameter samples must span a decade");
  const std::size_t N = grid.size();
  const std::size_t n = grid.dims();

  OuterResult res;
  std::vector<double> means(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::vector<double> vals(N);
    for (std::size_t i = 0; i < N; ++i) vals[i] = fam.u(constant_jets(grid.point(i)), r[k]).value();
    const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(N);
    double norm = 0.0;
    for (double v : vals) norm = std::max(norm, std::fabs(v - mean));
    means[k] = mean;
    res.norms.push_back(norm);
  }
  const double biggest = *std::max_element(res.norms.begin(), res.norms.end());
  if (biggest <= opts.zero_tol) {
    res.degenerate = true;
    res.notice = "degenerate family: u_r is constant for every sample, so the deformed graphs coincide with the zero section";
    return res;
  }
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (!(res.norms[k] > 0.0)) throw AnalyticityError("family vanishes at some samples but not others");
    lx.push_back(std::log(r[k]));
    ly.push_back(std::log(res.norms[k]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  res.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double e = ly[k] - (my + res.slope * (lx[k] - mx));
    ss += e * e;
  }
  res.fit_rms = std::sqrt(ss / static_cast<double>(lx.size()));
  res.order = static_cast<int>(std::lround(res.slope));
  res.residual = std::fabs(res.slope - res.order);
  if (res.residual > opts.order_tol)
    throw AnalyticityError("fitted order " + std::to_string(res.slope) + " is not close to an integer");
  if (res.order < 1) throw AnalyticityError("family does not start at the zero section (order < 1)");

  // Richardson extrapolation of q(r) = (u_r - mean) / r^h from the two smallest samples.
  const double r1 = r[0], r2 = r[1];
  const double p1 = std::pow(r1, res.order), p2 = std::pow(r2, res.order);
  const double m1 = means[0], m2 = means[1];
  const double w1 = r2 / (r2 - r1), w2 = -r1 / (r2 - r1);
  auto u = fam.u;
  auto v_jet = [u, r1, r2, p1, p2, m1, m2, w1, w2](const JetVec& x) {
    return w1 * (u(x, r1) - Jet(m1)) / Jet(p1) + w2 * (u(x, r2) - Jet(m2)) / Jet(p2);
  };
  std::vector<double> vv(N);
  std::vector<double> dvY(N);
  parallel_for(N, [&](std::size_t i) {
    const TorusPoint x = grid.point(i);
    const Jet v = v_jet(seeded_jets(x, 0, n));
    vv[i] = v.value();
    const TorusPoint Yx = Y.eval(x);
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += v.d(j) * Yx[j];
    dvY[i] = d;
  });
  res.v = ScalarField(grid, vv);
  res.min_dvY = *std::min_element(dvY.begin(), dvY.end());
  res.dvY_nonnegative = res.min_dvY >= -opts.dvY_tol;
  res.v_constant = res.v->range() <= opts.dvY_tol;
  res.minus_v = verify_lyapunov([&v_jet](const TorusPoint& x) { return -v_jet(constant_jets(x)).value(); },
                                grid, Y, opts.verify);
  return res;
}

InnerProbe inner_rigidity_probe(const HamiltonianSystem& Ht, const ZeroSectionReduction& red, const Potential& u,
                                const GridSpec& grid, bool y_is_scr_everywhere, double tol,
                                const VerifyOptions& verify) {
  InnerProbe p;
  const SublevelReport s = sublevel_check(Ht, 0.0, u, grid, tol);
  p.containment = s.inside_closure;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TorusPoint x = grid.point(i);
    const TorusPoint du = u.gradient(x, Ht.torus);
    double nrm = 0.0;
    for (std::size_t j = 0; j < du.n; ++j) nrm += du[j] * du[j];
    p.sup_du = std::max(p.sup_du, std::sqrt(nrm));
    p.max_F = std::max(p.max_F, red.F(x, du));
  }
  if (!p.containment) {
    p.pass = true;
    p.summary = "containment fails (max H(x,du) = " + std::to_string(s.max) + ")";
    return p;
  }
  p.applicable = y_is_scr_everywhere;
  VerifyOptions vo = verify;
  vo.tol = std::max(vo.tol, tol);
  vo.neutral_set = false;
  const auto verdict =
      verify_lyapunov([&u](const TorusPoint& x) { return u.value(x); }, grid, red.Y, vo);
  p.first_integral = verdict.is_first_integral;
  p.pass = p.sup_du <= tol;
  if (!p.applicable)
    p.summary = "mechanism not applicable: reduced flow is not strongly chain recurrent everywhere";
  else
    p.summary = p.pass ? "du vanishes: the graph is the zero section" : "rigidity violated: du does not vanish";
  return p;
}

}  // namespace chainscope
