#include <doctest.h>

#include <cmath>

#include "chainscope/catalog.hpp"
#include "chainscope/errors.hpp"
#include "chainscope/symplectic.hpp"

using namespace chainscope;

TEST_CASE("first example: H(x, du) = 4 sin^2 x1 (1 - sin x1)") {
  const CatalogSystem cs = load_system("pps-example");
  const Potential u = Potential::from_expression(Expression::parse("-2*cos(x1)", 2));
  const GridSpec grid(cs.hamiltonian->torus, {64, 64});
  const SublevelReport rep = sublevel_check(*cs.hamiltonian, 0.0, u, grid);
  CHECK(rep.min >= -1e-9);
  CHECK(rep.max == doctest::Approx(8.0));
  CHECK(rep.verdict == "outside closure(U_Σ) boundary-touching");
}

TEST_CASE("zero potential is contained in the level set of a Mane Hamiltonian") {
  const CatalogSystem cs = load_system("mane");
  const SublevelReport rep =
      sublevel_check(*cs.hamiltonian, 0.0, Potential::from_expression(Expression::parse("0", 2)), GridSpec(cs.flow.torus, {8, 8}));
  CHECK(rep.verdict == "contained in Σ");
}

TEST_CASE("Liouville classes") {
  const Torus t(2);
  const GridSpec probe(t, {32, 32});
  const auto c = liouville_class(OneForm::constant(t, {0.4, -0.1}), probe);
  CHECK(c.components[0] == doctest::Approx(0.4));
  CHECK(c.components[1] == doctest::Approx(-0.1));
  const auto e = liouville_class(OneForm::exact_expression(t, Expression::parse("cos(2*pi*(x1 - x2))", 2)), probe);
  CHECK(std::fabs(e.components[0]) <= 1e-12);
  CHECK(std::fabs(e.components[1]) <= 1e-12);
  const OneForm bad = OneForm::from_expressions(t, {Expression::parse("sin(2*pi*x2)", 2), Expression::parse("0", 2)});
  CHECK(curl_defect(bad, probe) > 1.0);
  CHECK_THROWS_AS(liouville_class(bad, probe), GeometryError);
}

TEST_CASE("fiberwise translation shifts classes") {
  const Torus t(2);
  const GridSpec probe(t, {32, 32});
  const OneForm eta = OneForm::constant(t, {0.2, 0.3});
  const OneForm theta = OneForm::sum(OneForm::constant(t, {-0.5, 1.0}),
                                     OneForm::exact_expression(t, Expression::parse("sin(2*pi*x1)", 2)));
  const auto c = liouville_class(translate_graph(eta, theta), probe);
  CHECK(c.components[0] == doctest::Approx(-0.3));
  CHECK(c.components[1] == doctest::Approx(1.3));
}

TEST_CASE("Mane Hamiltonian: zero section reproduces Y") {
  const CatalogSystem cs = load_system("mane", Config::parse("Y1 = sin(2*pi*x2)\nY2 = 0.5"));
  const GridSpec probe(cs.flow.torus, {8, 8});
  const auto red = zero_section_reduction(*cs.hamiltonian, probe);
  CHECK(red.max_zero_section <= 1e-12);
  CHECK(red.min_F >= 0.0);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const auto a = red.Y.eval(probe.point(i)), b = cs.flow.eval(probe.point(i));
    CHECK(a[0] == doctest::Approx(b[0]));
    CHECK(a[1] == doctest::Approx(b[1]));
  }
  const auto run = integrate_hamiltonian(*cs.hamiltonian, {TorusPoint{0.1, 0.2}, TorusPoint{0.3, -0.2}}, 2.0, 1e-3);
  CHECK(run.energy_drift <= 1e-9);
}

TEST_CASE("reduction needs H~ to vanish on the zero section") {
  CHECK_THROWS_AS(load_system("hamiltonian", Config::parse("dims = 1\nH = y1^2/2 + 1")), GeometryError);
  const CatalogSystem cs = load_system("pps-example");
  const HamiltonianSystem shifted = fiberwise_translate(*cs.hamiltonian, OneForm::constant(cs.hamiltonian->torus, {0.5, 0.0}));
  CHECK_THROWS_AS(zero_section_reduction(shifted, GridSpec(cs.hamiltonian->torus, {8, 8})), GeometryError);
}

TEST_CASE("outer leading term detects the order") {
  const CatalogSystem cs = load_system("outer-example");
  const GridSpec grid(cs.flow.torus, {32, 32});
  OuterOptions o;
  o.verify.neutral_set = false;
  o.verify.n_random = 50;
  const std::vector<double> rs{0.001, 0.002, 0.005, 0.01, 0.02};
  const auto two = outer_leading_term(
      DeformationFamily::from_expression(Expression::parse("r^2*sin(2*pi*x1) + r^3*cos(2*pi*x2)", 2, false, true), rs),
      cs.flow, grid, o);
  CHECK(two.order == 2);
  CHECK_FALSE(two.v_constant);
  const auto zero = outer_leading_term(DeformationFamily::from_expression(Expression::parse("0*r", 2, false, true), rs),
                                       cs.flow, grid, o);
  CHECK(zero.degenerate);
  CHECK_THROWS_AS(outer_leading_term(DeformationFamily::from_expression(
                                         Expression::parse("r^1.5*sin(2*pi*x1)", 2, false, true), rs),
                                     cs.flow, grid, o),
                  AnalyticityError);
}

TEST_CASE("outer profile g") {
  // g' = -f off the band and g is periodic.
  for (double x : {0.1, 0.8, 0.95}) {
    const Jet j = outer_g(Jet::variable(x, 0, 1));
    CHECK(j.d(0) == doctest::Approx(-outer_f(x)).epsilon(1e-9));
  }
  CHECK(outer_g(0.0) == doctest::Approx(outer_g(1.0 - 1e-12)).epsilon(1e-9));
}
