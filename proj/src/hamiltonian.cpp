#include "chainscope/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "chainscope/errors.hpp"

namespace chainscope {

JetVec constant_jets(const TorusPoint& p) {
  JetVec v{};
  for (std::size_t j = 0; j < std::min(p.n, kMaxDims); ++j) v[j] = Jet(p[j]);
  return v;
}

JetVec seeded_jets(const TorusPoint& p, std::size_t offset, std::size_t nvars) {
  JetVec v{};
  for (std::size_t j = 0; j < std::min(p.n, kMaxDims); ++j) v[j] = Jet::variable(p[j], offset + j, nvars);
  return v;
}

double HamiltonianSystem::value(const TorusPoint& x, const TorusPoint& y) const {
  return H(constant_jets(x), constant_jets(y)).value();
}

double HamiltonianSystem::gradients(const TorusPoint& x, const TorusPoint& y, TorusPoint& dx,
                                    TorusPoint& dy) const {
  const std::size_t n = torus.dims();
  if (x.n != n || y.n != n) throw InputError("phase point dimension does not match torus");
  const Jet h = H(seeded_jets(x, 0, 2 * n), seeded_jets(y, n, 2 * n));
  dx = TorusPoint::zeros(n);
  dy = TorusPoint::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    dx[j] = h.d(j);
    dy[j] = h.d(n + j);
  }
  return h.value();
}

HamiltonianSystem mane_hamiltonian(const FlowSystem& Y) {
  if (!Y.jet_field) throw ConfigError("Mane Hamiltonian needs a vector field with a jet evaluator");
  const std::size_t n = Y.torus.dims();
  auto field = Y.jet_field;
  HamiltonianSystem h;
  h.torus = Y.torus;
  h.energy_level = 0.0;
  h.label = "mane(" + Y.label + ")";
  h.H = [field, n](const JetVec& x, const JetVec& y) {
    const JetVec v = field(x);
    Jet s(0.0);
    for (std::size_t j = 0; j < n; ++j) s += 0.5 * y[j] * y[j] + y[j] * v[j];
    return s;
  };
  return h;
}

namespace {

struct State {
  TorusPoint x, y;
};

State deriv(const HamiltonianSystem& sys, const State& s) {
  State d;
  sys.gradients(s.x, s.y, d.y, d.x);  // d.y <- d_xH, d.x <- d_yH
  for (std::size_t j = 0; j < d.y.n; ++j) d.y[j] = -d.y[j];
  for (std::size_t j = 0; j < d.x.n; ++j)
    if (!std::isfinite(d.x[j]) || !std::isfinite(d.y[j]))
      throw NumericError("non-finite Hamiltonian gradient", s.x.to_vector());
  return d;
}

State axpy(const State& s, double a, const State& d) {
  State r = s;
  for (std::size_t j = 0; j < s.x.n; ++j) {
    r.x[j] += a * d.x[j];
    r.y[j] += a * d.y[j];
  }
  return r;
}

void rk4(const HamiltonianSystem& sys, State& s, double dt) {
  const State k1 = deriv(sys, s);
  const State k2 = deriv(sys, axpy(s, 0.5 * dt, k1));
  const State k3 = deriv(sys, axpy(s, 0.5 * dt, k2));
  const State k4 = deriv(sys, axpy(s, dt, k3));
  for (std::size_t j = 0; j < s.x.n; ++j) {
    s.x[j] += dt / 6.0 * (k1.x[j] + 2.0 * k2.x[j] + 2.0 * k3.x[j] + k4.x[j]);
    s.y[j] += dt / 6.0 * (k1.y[j] + 2.0 * k2.y[j] + 2.0 * k3.y[j] + k4.y[j]);
  }
}

void check_state(const State& s) {
  for (std::size_t j = 0; j < s.x.n; ++j)
    if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j]))
      throw NumericError("Hamiltonian integration blew up", s.x.to_vector());
}

void check_step(double step) {
  if (!(step > 0.0) || step > kMaxStep * (1.0 + 1e-12)) throw ConfigError("integration step must lie in (0, 1e-3]");
}

}  // namespace

HamiltonianRun integrate_hamiltonian(const HamiltonianSystem& sys, const PhasePoint& z0, double t,
                                     double step) {
  check_step(step);
  if (!std::isfinite(t)) throw InputError("integration time must be finite");
  State s{z0.x, z0.y};
  const double h0 = sys.value(s.x, s.y);
  const double dir = t < 0.0 ? -1.0 : 1.0;
  const double span = std::fabs(t);
  const auto full = static_cast<long long>(std::floor(span / step));
  HamiltonianRun run;
  for (long long i = 0; i < full; ++i) {
    rk4(sys, s, dir * step);
    check_state(s);
    run.max_energy_drift = std::max(run.max_energy_drift, std::fabs(sys.value(s.x, s.y) - h0));
  }
  const double rest = span - static_cast<double>(full) * step;
  if (rest > 0.0) rk4(sys, s, dir * rest);
  check_state(s);
  run.energy_drift = std::fabs(sys.value(s.x, s.y) - h0);
  run.max_energy_drift = std::max(run.max_energy_drift, run.energy_drift);
  run.end = {sys.torus.reduce(s.x), s.y};
  return run;
}

std::vector<PhasePoint> hamiltonian_trajectory(const HamiltonianSystem& sys, const PhasePoint& z0,
                                               const std::vector<double>& times, double step) {
  check_step(step);
  State s{z0.x, z0.y};
  std::vector<PhasePoint> out;
  long long done = 0;
  double prev = 0.0;
  for (double t : times) {
    if (t < prev) throw InputError("trajectory times must be ascending and nonnegative");
    prev = t;
    const auto full = static_cast<long long>(std::floor(t / step));
    for (; done < full; ++done) rk4(sys, s, step);
    State b = s;
    const double rest = t - static_cast<double>(full) * step;
    if (rest > 0.0) rk4(sys, b, rest);
    check_state(b);
    out.push_back({sys.torus.reduce(b.x), b.y});
  }
  return out;
}

}  // namespace chainscope
