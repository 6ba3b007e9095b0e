#include "chainscope/flow.hpp"

#include <algorithm>
#include <cmath>

#include "chainscope/errors.hpp"

namespace chainscope {

namespace {

void check_finite(const TorusPoint& v, const TorusPoint& at) {
  for (std::size_t j = 0; j < v.n; ++j)
    if (!std::isfinite(v.c[j])) throw NumericError("non-finite vector field value", at.to_vector());
}

// One RK4 step of size dt (sign carried by dt).
void rk4_step(const FlowSystem& sys, TorusPoint& x, double dt) {
  const std::size_t n = x.n;
  TorusPoint k1 = sys.eval(x);
  TorusPoint y = x;
  for (std::size_t j = 0; j < n; ++j) y.c[j] = x.c[j] + 0.5 * dt * k1.c[j];
  TorusPoint k2 = sys.eval(y);
  for (std::size_t j = 0; j < n; ++j) y.c[j] = x.c[j] + 0.5 * dt * k2.c[j];
  TorusPoint k3 = sys.eval(y);
  for (std::size_t j = 0; j < n; ++j) y.c[j] = x.c[j] + dt * k3.c[j];
  TorusPoint k4 = sys.eval(y);
  for (std::size_t j = 0; j < n; ++j)
    x.c[j] += dt / 6.0 * (k1.c[j] + 2.0 * k2.c[j] + 2.0 * k3.c[j] + k4.c[j]);
}

void validate_step(double step) {
  if (!(step > 0.0) || step > kMaxStep * (1.0 + 1e-12) || !std::isfinite(step))
    throw ConfigError("integration step must lie in (0, 1e-3]");
}

}  // namespace

TorusPoint FlowSystem::eval(const TorusPoint& x) const {
  TorusPoint v = field(x);
  if (v.n != x.n) throw InputError("vector field returned wrong dimension");
  check_finite(v, x);
  return v;
}

double default_step(const FlowSystem& sys) {
  double s = kMaxStep;
  if (sys.lipschitz_bound && *sys.lipschitz_bound > 0.0) s = std::min(s, 0.1 / *sys.lipschitz_bound);
  return s;
}

TorusPoint integrate_lifted(const FlowSystem& sys, TorusPoint x, double t, double step) {
  validate_step(step);
  if (!std::isfinite(t)) throw InputError("integration time must be finite");
  if (x.n != sys.torus.dims()) throw InputError("point dimension does not match torus");
  const double dir = t < 0.0 ? -1.0 : 1.0;
  const double span = std::fabs(t);
  const auto full = static_cast<long long>(std::floor(span / step));
  for (long long i = 0; i < full; ++i) rk4_step(sys, x, dir * step);
  const double rest = span - static_cast<double>(full) * step;
  if (rest > 0.0) rk4_step(sys, x, dir * rest);
  for (std::size_t j = 0; j < x.n; ++j)
    if (!std::isfinite(x.c[j])) throw NumericError("integration produced non-finite state", x.to_vector());
  return x;
}

TorusPoint integrate(const FlowSystem& sys, const TorusPoint& x0, double t, double step) {
  return sys.torus.reduce(integrate_lifted(sys, x0, t, step));
}

std::vector<TorusPoint> integrate_checkpoints(const FlowSystem& sys, const TorusPoint& x0,
                                              const std::vector<double>& times, double step,
                                              bool lifted) {
  validate_step(step);
  if (x0.n != sys.torus.dims()) throw InputError("point dimension does not match torus");
  std::vector<TorusPoint> out;
  out.reserve(times.size());
  TorusPoint x = x0;
  long long done = 0;
  double prev = 0.0;
  for (double t : times) {
    if (t < prev || !std::isfinite(t)) throw InputError("checkpoint times must be ascending and nonnegative");
    prev = t;
    const auto full = static_cast<long long>(std::floor(t / step));
    for (; done < full; ++done) rk4_step(sys, x, step);
    TorusPoint y = x;
    const double rest = t - static_cast<double>(full) * step;
    if (rest > 0.0) rk4_step(sys, y, rest);
    for (std::size_t j = 0; j < y.n; ++j)
      if (!std::isfinite(y.c[j])) throw NumericError("integration produced non-finite state", y.to_vector());
    out.push_back(lifted ? y : sys.torus.reduce(y));
  }
  return out;
}

double periodicity_defect(const FlowSystem& sys, const std::vector<TorusPoint>& samples) {
  double worst = 0.0;
  for (const auto& x : samples) {
    const TorusPoint v = sys.eval(x);
    for (std::size_t j = 0; j < x.n; ++j) {
      TorusPoint s = x;
      s.c[j] += sys.torus.period(j);
      const TorusPoint w = sys.eval(s);
      for (std::size_t k = 0; k < x.n; ++k) worst = std::max(worst, std::fabs(v.c[k] - w.c[k]));
    }
  }
  return worst;
}

}  // namespace chainscope
