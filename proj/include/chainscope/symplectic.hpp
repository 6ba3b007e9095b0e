#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chainscope/expression.hpp"
#include "chainscope/grid.hpp"
#include "chainscope/hamiltonian.hpp"
#include "chainscope/lyapunov.hpp"

namespace chainscope {

using JetScalarFn = std::function<Jet(const JetVec&)>;

/// Closed one-form theta = sum_j theta_j(x) dx^j on a torus.
struct OneForm {
  Torus torus;
  JetVectorField theta;
  JetScalarFn potential;  // set for exact forms theta = du
  std::string label;

  TorusPoint eval(const TorusPoint& x) const;

  static OneForm constant(const Torus& t, const std::vector<double>& c);
  /// theta = du, components from the jet gradient of u. The components carry
  /// no x-derivatives, so use exact_expression where d_x of a translated
  /// Hamiltonian matters.
  static OneForm exact(const Torus& t, JetScalarFn u, std::string label = "du");
  /// theta = du with u an expression; components are symbolic derivatives.
  static OneForm exact_expression(const Torus& t, const Expression& u);
  /// Components given as expressions in x1..xn.
  static OneForm from_expressions(const Torus& t, const std::vector<Expression>& comps);
  static OneForm sum(const OneForm& a, const OneForm& b);
};

/// max |d theta_j/dx_k - d theta_k/dx_j| over the probe grid.
double curl_defect(const OneForm& form, const GridSpec& probe);

inline constexpr double kCurlTolerance = 1e-6;

struct LiouvilleClass {
  std::vector<double> components;
};

/// Component j is the grid average of theta_j, i.e. the integral of theta over
/// the j-th fundamental cycle divided by P_j. Throws GeometryError when the
/// curl check fails.
LiouvilleClass liouville_class(const OneForm& form, const GridSpec& probe);

/// Image of the graph of eta under (x, y) -> (x, y + theta(x)), as a one-form.
OneForm translate_graph(const OneForm& eta, const OneForm& theta);

/// H~(x, y) = H(x, y + theta(x)) - c; c defaults to the system's energy level.
HamiltonianSystem fiberwise_translate(const HamiltonianSystem& H, const OneForm& theta,
                                      std::optional<double> c = std::nullopt);

struct ZeroSectionReduction {
  FlowSystem Y;  // Y(x) = d_y H~(x, 0)
  std::function<double(const TorusPoint&, const TorusPoint&)> F;  // H~ - y.Y
  double max_zero_section = 0.0;  // max |H~(x, 0)| on the probe grid
  double min_F = 0.0;             // min F on the probe set
};

struct ReductionOptions {
  double zero_tol = 1e-9;
  double convexity_tol = 1e-12;
  double y_radius = 2.0;       // fiber probes y in [-R, R]^n
  std::size_t y_per_axis = 5;  // fiber probe count per axis
};

/// Throws GeometryError if H~ does not vanish on the zero section and
/// ConvexityError if F takes a negative value on the probe set.
ZeroSectionReduction zero_section_reduction(const HamiltonianSystem& Ht, const GridSpec& probe,
                                            const ReductionOptions& opts = {});

/// Function on the base with an exact (jet) or finite-difference gradient.
struct Potential {
  JetScalarFn jet;                                 // preferred
  std::function<double(const TorusPoint&)> plain;  // fallback, gradient by central differences

  static Potential from_expression(const Expression& e);
  static Potential from_jet(JetScalarFn f);

  double value(const TorusPoint& x) const;
  TorusPoint gradient(const TorusPoint& x, const Torus& t) const;
};

struct SublevelReport {
  double min = 0.0;  // min of H(x, du(x)) - c
  double max = 0.0;
  std::size_t argmin = 0;
  TorusPoint argmin_point;
  std::string verdict;
  bool inside_closure = false;  // max <= tol
  bool outside = false;         // min >= -tol
};

SublevelReport sublevel_check(const HamiltonianSystem& H, double c, const Potential& u,
                              const GridSpec& grid, double tol = 1e-9);

/// u_r for r in (0, r0]; an exact-graph deformation after fiberwise translation.
struct DeformationFamily {
  std::vector<double> r;
  std::function<Jet(const JetVec&, double)> u;
  bool analytic = true;  // asserted by the caller, never certified
  std::string label;

  static DeformationFamily from_expression(const Expression& e, std::vector<double> r);
};

struct OuterOptions {
  double order_tol = 0.05;
  double zero_tol = 1e-14;  // families below this sup norm count as identically zero
  double dvY_tol = 1e-9;
  VerifyOptions verify;     // for -v as a Lyapunov function of Y
};

struct OuterResult {
  bool degenerate = false;
  std::string notice;
  int order = 0;
  double slope = 0.0;     // fitted log-log slope
  double residual = 0.0;  // |slope - order|
  double fit_rms = 0.0;   // rms of the log-log regression
  std::vector<double> norms;
  std::optional<ScalarField> v;
  double min_dvY = 0.0;
  bool dvY_nonnegative = false;
  bool v_constant = false;
  std::optional<LyapunovVerdict> minus_v;
};

/// Leading term u_r = r^h v + r^(h+1) w_r. Throws AnalyticityError when the
/// fitted order is not within order_tol of an integer.
OuterResult outer_leading_term(const DeformationFamily& fam, const FlowSystem& Y, const GridSpec& grid,
                               const OuterOptions& opts = {});

struct InnerProbe {
  bool containment = false;   // sublevel max <= tol
  bool applicable = false;    // containment holds and Y is SCR on the whole torus
  bool first_integral = false;
  double max_F = 0.0;         // max F(x, du(x))
  double sup_du = 0.0;
  bool pass = false;          // containment fails, or du ~ 0
  std::string summary;
};

/// If du(T^n) lies in the closed sublevel and the reduced flow is strongly
/// chain recurrent everywhere, u must be a first integral of Y and du must vanish.
InnerProbe inner_rigidity_probe(const HamiltonianSystem& Ht, const ZeroSectionReduction& red,
                                const Potential& u, const GridSpec& grid, bool y_is_scr_everywhere,
                                double tol = 1e-6, const VerifyOptions& verify = {});

}  // namespace chainscope
