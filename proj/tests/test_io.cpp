#include <sstream>

#include "doctest.h"
#include "ndirac/io.hpp"

using namespace ndirac;

namespace {

const char* kFull = R"(T = "pi"
[potential]
p = { breaks = [0.0, 1.0, 3.141592653589793], panels = [[0.1, 0.2], [0.3]] }
q = { trig = { amplitude = [0.1, 0.05], frequency = 2.0, phase = 0.5 } }
[U1]
h = [1.0, [0.0, 0.5]]
atoms = [ { t = 1.5, w = [0.2, -0.1] } ]
density = { d1 = [0.3, 0.1], d2 = 0.2, lo = 0.5, hi = 2.0 }
[U2]
atoms = [ { t = 2.0, w = [1.0, 0.0] } ]
density = { d1 = { hat = { center = 1.0, half_width = 0.5, amplitude = 1.0 } } }
[tolerances]
ode_tol = 1e-11
)";

ParseError parse_error(const std::string& text) {
  try {
    parse_problem(text, "case.toml");
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no ParseError");
  return ParseError("", "", 0);
}

}  // namespace

TEST_CASE("full problem file") {
  const auto P = parse_problem(kFull, "full.toml");
  CHECK(P.T() == kPi);
  CHECK(std::abs(P.omega().p(0.5) - Complex(0.1, 0.0)) < 1e-15);  // T_0 + 0.2 T_1 at the panel centre
  CHECK(std::abs(P.omega().q(0.0) - Complex(0.1, 0.05) * std::cos(0.5)) < 1e-15);
  CHECK(P.U1().jump()(1) == Complex(0.0, 0.5));
  REQUIRE(P.U1().atoms().size() == 1);
  CHECK(P.U1().density()->hi == 2.0);
  CHECK(P.U2().jump().norm() == 0.0);
  CHECK(P.U2().density()->lo == 0.0);
  CHECK(P.U2().density()->hi == kPi);
  CHECK(P.tolerances().ode == 1e-11);
  CHECK(P.tolerances().root == Tolerances{}.root);
}

TEST_CASE("potential variants") {
  const std::string forms = "[U1]\nh = [1.0, 0.0]\n[U2]\natoms = [ { t = 1.0, w = [1.0, 0.0] } ]\n";
  const auto c = parse_problem("T = 2.0\n[potential]\nconstant = { p = 0.3, q = -0.2 }\n" + forms);
  CHECK(c.omega().p(1.3) == Complex(0.3));
  CHECK(c.omega().q(1.3) == Complex(-0.2));
  const auto ch = parse_problem("T = 2.0\n[potential]\nchebyshev = { p = [0.0, 1.0] }\n" + forms);
  CHECK(std::abs(ch.omega().p(2.0) - 1.0) < 1e-15);
  CHECK(ch.omega().q().is_zero());
  const auto fr = parse_problem("T = 2.0\n[potential]\npreset = \"free\"\n" + forms);
  CHECK(fr.omega().p().is_zero());
  const auto ex = parse_problem("T = \"pi\"\n[potential]\npreset = \"example2\"\n" + forms);
  CHECK(ex.omega().sup_distance(default_example2_bump()) == 0.0);
  const auto rnd = parse_problem("[random]\nseed = 42\ndegree = 2\n");
  const auto rnd2 = parse_problem("[random]\nseed = 42\ndegree = 2\n");
  CHECK(rnd.omega().sup_distance(rnd2.omega()) == 0.0);
  CHECK(rnd.T() == kPi);
}

TEST_CASE("errors carry the field and line") {
  const std::string forms = "[U1]\nh = [1.0, 0.0]\n[U2]\natoms = [ { t = 1.0, w = [1.0, 0.0] } ]\n";
  auto e = parse_error("T = 2.0\n[potential]\nconstant = { p = 0.3, r = 1 }\n" + forms);
  CHECK(e.field == "potential.constant.r");
  CHECK(e.line == 3);
  CHECK(std::string(e.what()).find("case.toml:3:") == 0);
  e = parse_error("T = 2.0\n[potential]\npreset = \"free\"\n[U1]\nh = [0.0, 0.0]\n[U2]\n");
  CHECK(e.field == "U1");
  CHECK(e.line == 4);
  e = parse_error("T = 2.0\n[potential\n");
  CHECK(e.line == 2);
  e = parse_error("T = 2.0\n[potential]\npreset = \"free\"\n" + forms + "[extra]\n");
  CHECK(std::string(e.what()).find("extra") != std::string::npos);
  e = parse_error("T = 2.0\n[potential]\npreset = \"example1\"\n" + forms);
  CHECK(e.field == "potential.preset");
  e = parse_error("[potential]\npreset = \"free\"\n" + forms);
  CHECK(e.field == "T");
  e = parse_error("T = 2.0\n[potential]\npreset = \"free\"\n[U1]\nh = [1.0, 0.0]\n[U2]\natoms = [ { t = 3.0, w = [1.0, 0.0] } ]\n");
  CHECK(e.field.rfind("U2", 0) == 0);
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.toml"), ParseError);
}

TEST_CASE("problem files round trip") {
  const auto P = parse_problem(kFull);
  const std::string text = problem_to_toml(P);
  const auto Q = parse_problem(text);
  CHECK(problem_to_toml(Q) == text);
  CHECK(P.omega().sup_distance(Q.omega()) == 0.0);
  const auto R = parse_problem(problem_to_toml(parse_problem("[random]\nseed = 7\n")));
  CHECK(R.omega().sup_distance(parse_problem("[random]\nseed = 7\n").omega()) == 0.0);
}

TEST_CASE("spectral data json") {
  ThreeSpectra t;
  t.l0 = {Complex(0.5, 0.25)};
  t.l1 = {1.0, Complex(-2.0, 1e-17)};
  t.l2 = {};
  t.a = 1.25;
  t.h0 = Spinor(Complex(0, 1), 2.0);
  const SpectralData d{t, ComplexWindow(-3, 3, -1, 1)};
  const auto back = spectral_data_from_json(nlohmann::json::parse(to_json(d).dump()));
  CHECK(back.tag() == "three_spectra");
  const auto& u = std::get<ThreeSpectra>(back.data);
  CHECK(u.l0 == t.l0);
  CHECK(u.l1 == t.l1);
  CHECK(u.a == t.a);
  CHECK(u.h0 == t.h0);
  CHECK(back.window->re_max == 3.0);

  CHECK(complex_from_json(nlohmann::json(2.5)) == Complex(2.5));
  CHECK_THROWS_AS(complex_from_json(nlohmann::json("x")), ParseError);
  CHECK_THROWS_AS(spectral_data_from_json(nlohmann::json::parse(R"({"type": "weyl", "mu": [1.0], "M": [], "xi": []})")),
                  ParseError);
  CHECK_THROWS_AS(spectral_data_from_json(nlohmann::json::parse(R"({"type": "two_spectra", "lambda1": [1.0]})")),
                  ParseError);
  CHECK_THROWS_AS(spectral_data_from_json(nlohmann::json::parse(R"({"type": "four"})")), ParseError);
}

TEST_CASE("csv output") {
  std::ostringstream out;
  write_csv(out, {"a", "b"}, {{0.1, -2.0}, {1.0 / 3.0, 1e-300}});
  CHECK(out.str() == "a,b\n0.10000000000000001,-2\n0.33333333333333331,1e-300\n");
}
