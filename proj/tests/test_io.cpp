#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "chainscope/app.hpp"
#include "chainscope/config.hpp"
#include "chainscope/errors.hpp"
#include "chainscope/expression.hpp"
#include "chainscope/report.hpp"

using namespace chainscope;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& command, const std::string& settings, std::string* out = nullptr) {
  std::ostringstream o, e;
  std::string text = settings;
  for (auto& c : text)
    if (c == ';') c = '\n';
  int rc = 0;
  try {
    rc = run(make_run_config(command, Config::parse(text)), o, e);
  } catch (const Error&) {
    rc = kExitConfigError;
  }
  if (out) *out = o.str();
  return rc;
}

}  // namespace

TEST_CASE("expressions: values and symbolic derivatives") {
  const Expression e = Expression::parse("x1^2 + 3*sin(pi*x2) - exp(0)", 2);
  CHECK(e.eval_x(TorusPoint{2.0, 0.5}) == doctest::Approx(4.0 + 3.0 - 1.0));
  CHECK(e.derivative_x(0).eval_x(TorusPoint{2.0, 0.5}) == doctest::Approx(4.0));
  CHECK(e.derivative_x(1).eval_x(TorusPoint{2.0, 0.0}) == doctest::Approx(3.0 * 3.141592653589793));
  CHECK(Expression::parse("-2^2", 1).eval_x(TorusPoint{0.0}) == doctest::Approx(-4.0));
  CHECK(Expression::parse("r*x1", 1, false, true).eval_x(TorusPoint{2.0}, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("expressions: errors") {
  CHECK_THROWS_AS(Expression::parse("x3", 2), ConfigError);
  CHECK_THROWS_AS(Expression::parse("y1", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("r", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("sin(x1", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("1 +", 1), ConfigError);
}

TEST_CASE("config parsing") {
  const Config c = Config::parse("# comment\n a = 1.5 \nlist = 1, 2,3\n\nflag = true\n");
  CHECK(c.get_double("a", 0) == 1.5);
  CHECK(c.get_counts("list", {}) == std::vector<std::size_t>{1, 2, 3});
  CHECK(c.get_bool("flag", false));
  CHECK(c.get("missing", "x") == "x");
  CHECK_THROWS_AS(Config::parse("no equals sign"), ConfigError);
  CHECK_THROWS_AS(c.get_int("a", 0), ConfigError);
}

TEST_CASE("CSV round trip is exact") {
  CsvTable t;
  t.name = "t";
  t.columns = {"a", "b", "c"};
  t.add_row({0.1, 1.0 / 3.0, -1e-300});
  t.add_row({std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 123456789.125});
  const CsvTable back = CsvTable::parse(t.to_string(), "t");
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK_THROWS_AS(CsvTable::parse("a,b\n1\n"), InputError);
  CHECK_THROWS_AS(CsvTable::parse("a,b\n1,zz\n"), InputError);
  CHECK_THROWS_AS(t.add_row({1.0}), InputError);
}

TEST_CASE("gnuplot script references CSV columns") {
  CsvTable t;
  t.name = "nodes";
  t.columns = {"x1", "v"};
  const std::string s = gnuplot_script({"p", "title", "x", "y", {{"nodes", "x1", "v", "v", "lines"}}}, {t});
  CHECK(s.find("'nodes.csv' every ::1 using 1:2 with lines") != std::string::npos);
  CHECK_THROWS_AS(gnuplot_script({"p", "", "", "", {{"nodes", "x1", "w", "", "lines"}}}, {t}), InputError);
}

TEST_CASE("grid and ladder syntax") {
  CHECK(parse_grid("64x32") == std::vector<std::size_t>{64, 32});
  CHECK(parse_ladder("16,32").size() == 2);
  CHECK_THROWS_AS(parse_grid("64x"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a"), ConfigError);
}

TEST_CASE("run config validation") {
  CHECK_THROWS_AS(make_run_config("analyze", Config::parse("system = rotation\nT = 0")), ConfigError);
  CHECK_THROWS_AS(make_run_config("analyze", Config::parse("system = rotation\nratio_max = 1.5")), ConfigError);
  CHECK_THROWS_AS(make_run_config("analyze", Config::parse("system = rotation\nstep = 0.01")), ConfigError);
  CHECK_THROWS_AS(make_run_config("frobnicate", Config{}), ConfigError);
  CHECK_THROWS_AS(make_run_config("lyapunov", Config{}), ConfigError);
  const RunConfig c = make_run_config("analyze", Config::parse("system = cantor-fat\ndelta = 0.3"));
  CHECK(c.params.get_double("delta", 0) == 0.3);
}

TEST_CASE("exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "chainscope-unit";
  const std::string out = "out = " + dir.string();
  CHECK(run_cli("examples", out) == kExitOk);
  CHECK(run_cli("analyze", out + ";system = nope") == kExitConfigError);
  CHECK(run_cli("analyze", out + ";system = rotation;grid = 16") == kExitConfigError);
  CHECK(run_cli("lyapunov", out + ";system = gradient-circle;grid = 128;samples = 100") == kExitOk);
  CHECK(run_cli("rigidity", out + ";system = pps-example;grid = 16x16;potential = -2*cos(x1)") == kExitOk);
  CHECK(run_cli("rigidity", out + ";system = rotation") == kExitConfigError);
  CHECK(run_cli("outer", out + ";system = outer-example;grid = 16x16;family = u=r^1.5*sin(2*pi*x1)") == kExitNumericError);
  CHECK(run_cli("flow", out) == kExitConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("artifacts are deterministic") {
  const auto base = std::filesystem::temp_directory_path() / "chainscope-det";
  std::string t1, t2;
  CHECK(run_cli("analyze", "system = cantor-null;grid = 128;threads = 1;out = " + (base / "a").string(), &t1) == 0);
  CHECK(run_cli("analyze", "system = cantor-null;grid = 128;threads = 3;out = " + (base / "b").string(), &t2) == 0);
  CHECK(t1 == t2);
  for (const char* f : {"summary.json", "nodes.csv", "loop_cost.gp"}) {
    const std::string a = slurp(base / "a" / f), b = slurp(base / "b" / f);
    CHECK_FALSE(a.empty());
    CHECK_MESSAGE(a == b, f);
  }
  std::filesystem::remove_all(base);
}
