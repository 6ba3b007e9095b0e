#include "chainscope/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "chainscope/errors.hpp"

namespace chainscope {

CantorSpec CantorSpec::fat(double delta, std::size_t depth) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("fat Cantor measure must lie in (0,1)");
  if (depth < 1 || depth > 24) throw ConfigError("Cantor depth must lie in [1,24]");
  CantorSpec s;
  s.kind = CantorKind::fat;
  s.target_measure = delta;
  s.depth = depth;
  const double a = s.removal_scale();
  std::vector<Interval> current{{0.0, 1.0}};
  for (std::size_t k = 1; k <= depth; ++k) {
    const double g = a * std::pow(4.0, -static_cast<double>(k));
    std::vector<Interval> next, removed;
    next.reserve(current.size() * 2);
    removed.reserve(current.size());
    for (const auto& p : current) {
      const double mid = 0.5 * (p.lo + p.hi);
      if (!(g < p.length())) throw InternalError("fat Cantor gap exceeds its piece");
      removed.push_back({mid - 0.5 * g, mid + 0.5 * g});
      next.push_back({p.lo, mid - 0.5 * g});
      next.push_back({mid + 0.5 * g, p.hi});
    }
    s.removed.push_back(std::move(removed));
    current = std::move(next);
  }
  return s;
}

CantorSpec CantorSpec::null(std::size_t depth) {
  if (depth < 1 || depth > 16) throw ConfigError("null Cantor depth must lie in [1,16]");
  CantorSpec s;
  s.kind = CantorKind::null;
  s.target_measure = 0.0;
  s.depth = depth;
  std::vector<Interval> current{{0.0, 1.0}};
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<Interval> next, removed;
    for (const auto& p : current) {
      const double third = p.length() / 3.0;
      removed.push_back({p.lo + third, p.hi - third});
      next.push_back({p.lo, p.lo + third});
      next.push_back({p.hi - third, p.hi});
    }
    s.removed.push_back(std::move(removed));
    current = std::move(next);
  }
  return s;
}

double CantorSpec::removal_scale() const {
  if (kind != CantorKind::fat) return 1.0;
  return 2.0 * (1.0 - target_measure) / (1.0 - std::pow(2.0, -static_cast<double>(depth)));
}

std::vector<Interval> CantorSpec::pieces() const {
  std::vector<Interval> all;
  for (const auto& lvl : removed) all.insert(all.end(), lvl.begin(), lvl.end());
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  out.reserve(all.size() + 1);
  double left = 0.0;
  for (const auto& g : all) {
    out.push_back({left, g.lo});
    left = g.hi;
  }
  out.push_back({left, 1.0});
  return out;
}

std::vector<Interval> CantorSpec::zero_set() const {
  auto ps = pieces();
  if (kind == CantorKind::fat) return ps;
  std::vector<Interval> pts;
  pts.reserve(2 * ps.size());
  for (const auto& p : ps) {
    pts.push_back({p.lo, p.lo});
    pts.push_back({p.hi, p.hi});
  }
  // 1 is identified with 0 on the circle.
  pts.pop_back();
  return pts;
}

std::vector<double> CantorSpec::endpoints() const {
  std::vector<double> e;
  for (const auto& p : pieces()) {
    e.push_back(p.lo);
    e.push_back(p.hi);
  }
  return e;
}

double CantorSpec::removed_length() const {
  double s = 0.0;
  for (const auto& lvl : removed)
    for (const auto& g : lvl) s += g.length();
  return s;
}

double CantorSpec::measure() const {
  double s = 0.0;
  for (const auto& p : pieces()) s += p.length();
  return s;
}

CantorProfile::CantorProfile(const CantorSpec& spec, CantorFlowOptions opts)
    : zero_(spec.zero_set()), opts_(opts) {
  if (!(opts.gain > 0.0) || !(opts.exponent >= 1.0))
    throw ConfigError("Cantor flow needs gain > 0 and exponent >= 1");
}

Interval CantorProfile::gap_containing(double x) const {
  double y = x - std::floor(x);
  if (y >= 1.0) y = 0.0;
  // first zero interval with lo > y
  auto it = std::upper_bound(zero_.begin(), zero_.end(), y,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  double lo, hi;
  if (it == zero_.begin()) {
    lo = zero_.back().hi - 1.0;
    hi = it->lo;
  } else {
    const Interval& prev = *(it - 1);
    if (y <= prev.hi) return {x, x};
    lo = prev.hi;
    hi = it == zero_.end() ? zero_.front().lo + 1.0 : it->lo;
  }
  const double shift = x - y;
  return {lo + shift, hi + shift};
}

double CantorProfile::dist(double x) const {
  const Interval g = gap_containing(x);
  if (g.hi <= g.lo) return 0.0;
  return std::min(x - g.lo, g.hi - x);
}

double CantorProfile::phi(double x) const {
  const double d = std::min(1.0, opts_.gain * dist(x));
  return opts_.exponent == 1.0 ? d : std::pow(d, opts_.exponent);
}

FlowSystem build_cantor_flow(const CantorSpec& spec, CantorFlowOptions opts) {
  auto prof = std::make_shared<const CantorProfile>(spec, opts);
  FlowSystem sys;
  sys.torus = Torus(1);
  sys.field = [prof](const TorusPoint& x) { return TorusPoint{prof->phi(x[0])}; };
  sys.lipschitz_bound = opts.gain * opts.exponent;
  sys.label = spec.kind == CantorKind::fat ? "cantor-fat" : "cantor-null";
  return sys;
}

}  // namespace chainscope
