#include <algorithm>

#include "doctest.h"
#include "ndirac/random_problem.hpp"
#include "ndirac/spectra.hpp"

using namespace ndirac;

namespace {

DiracProblem free_problem(StieltjesForm u2) {
  return DiracProblem(PotentialOmega::free(kPi), StieltjesForm::jump_only(kPi, Spinor(1, 0), FormLabel::U1),
                      std::move(u2), Tolerances{1e-12, 1e-10, 1e-10});
}

std::vector<double> sorted_real(const SpectrumResult& r) {
  std::vector<double> v;
  for (const auto& e : r.eigenvalues) v.push_back(e.lambda.real());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("winding number of a polynomial") {
  const AnalyticFn f = [](Complex z) { return (z - 1.0) * (z - Complex(2.0, 0.5)) * (z - Complex(2.0, 0.5)) * (z + 7.0); };
  CHECK(count_zeros(f, ComplexWindow(-3, 3, -1, 1)) == 3);
  CHECK(count_zeros(f, ComplexWindow(-10, 0, -1, 1)) == 1);
  CHECK(count_zeros(f, ComplexWindow(3, 5, -1, 1)) == 0);
  CHECK_THROWS_AS(count_zeros(f, ComplexWindow(1, 3, -1, 1)), BoundaryZeroError);
  CHECK_THROWS_AS(ComplexWindow(1, 1, 0, 1), DomainError);
}

TEST_CASE("find_zeros reports a double zero once with multiplicity 2") {
  const Complex a(0.3, 0.2), b(-1.1, 0.0);
  const AnalyticFn f = [&](Complex z) { return (z - a) * (z - a) * (z - b); };
  const AnalyticFn df = [&](Complex z) { return 2.0 * (z - a) * (z - b) + (z - a) * (z - a); };
  const auto r = find_zeros(f, df, ComplexWindow(-2, 2, -1, 1));
  CHECK(r.contour_count == 3);
  CHECK(r.total_multiplicity() == 3);
  REQUIRE(r.eigenvalues.size() == 2);
  for (const auto& e : r.eigenvalues) {
    if (e.multiplicity == 2) CHECK(std::abs(e.lambda - a) < 1e-6);
    else CHECK(std::abs(e.lambda - b) < 1e-12);
  }
  CHECK(r.points().size() == 3);
}

TEST_CASE("free-field spectra are integers and half-integers") {
  const auto P = free_problem(StieltjesForm::point(kPi, kPi / 2, Spinor(1, 0), FormLabel::U2));
  const ComplexWindow w(-3.25, 3.25, -1, 1);
  const auto l1 = spectrum(P, ProblemTag::L1, w);
  const auto l11 = spectrum(P, ProblemTag::L11, w);
  CHECK(l1.contour_count == 7);
  CHECK(l11.contour_count == 6);
  const auto v1 = sorted_real(l1), v11 = sorted_real(l11);
  REQUIRE(v1.size() == 7);
  REQUIRE(v11.size() == 6);
  for (int n = -3; n <= 3; ++n) CHECK(std::abs(v1[static_cast<std::size_t>(n + 3)] - n) < 1e-8);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(v11[static_cast<std::size_t>(n)] - (n - 2.5)) < 1e-8);
  for (const auto& e : l1.eigenvalues) CHECK(e.multiplicity == 1);
  CHECK(min_distance(l1.eigenvalues, l11.eigenvalues) > 0.49);
  // omega = -sin(lambda pi / 2): even integers.
  const auto l0 = spectrum(P, ProblemTag::L0, w);
  CHECK(sorted_real(l0).size() == 3);
}

TEST_CASE("window edge on an eigenvalue is nudged") {
  const auto P = free_problem(StieltjesForm::point(kPi, kPi / 2, Spinor(1, 0), FormLabel::U2));
  const auto r = spectrum(P, ProblemTag::L1, ComplexWindow(-2.0, 2.0, -1, 1));
  // The edges sit on -2 and 2; growing the window keeps both.
  CHECK(r.contour_count == 5);
}

TEST_CASE("random problem eigenvalues are zeros") {
  const auto P = random_problem(3, {.ode_tol = 1e-12});
  const CharacteristicEvaluator ev(P);
  const auto r = spectrum(ev, ProblemTag::L1, ComplexWindow(-6, 6, -3, 3));
  CHECK(r.total_multiplicity() == r.contour_count);
  for (const auto& e : r.eigenvalues)
    CHECK(std::abs(ev(CharKind::Delta1, e.lambda)) <= 1e-8 * growth_scale(e.lambda, P.T()));
}

TEST_CASE("degenerate and unsupported problems") {
  const auto same = free_problem(StieltjesForm::jump_only(kPi, Spinor(1, 0), FormLabel::U2));
  CHECK_THROWS_AS(spectrum(same, ProblemTag::L0, ComplexWindow(-2, 2, -1, 1)), DegenerateCharacteristicError);
  FormDensity d{ScalarField::constant(1.0), ScalarField::zero(), 0.0, 1.0};
  const auto nonlocal = free_problem(StieltjesForm(kPi, Spinor::Zero(), {}, d, FormLabel::U2));
  CHECK_FALSE(is_two_point_problem(nonlocal));
  CHECK_THROWS_AS(spectrum(nonlocal, ProblemTag::L1p, ComplexWindow(-2, 2, -1, 1)), UnsupportedKindError);
  CHECK_THROWS_AS(problem_tag_from_string("L3"), UnsupportedKindError);
  CHECK(problem_tag_from_string("L1p") == ProblemTag::L1p);
}

TEST_CASE("two-point problems") {
  const auto P = two_point_problem(PotentialOmega::free(kPi), Spinor(1, 0), Spinor(0, 1), 1.0);
  double a = 0.0;
  CHECK(is_two_point_problem(P, &a));
  CHECK(a == 1.0);
  CHECK_THROWS_AS(two_point_problem(PotentialOmega::free(kPi), Spinor(1, 0), Spinor(0, 1), kPi), DomainError);
  CHECK_THROWS_AS(two_point_problem(PotentialOmega::free(kPi), Spinor(1, 0), Spinor::Zero(), 1.0), DomainError);
  // omega = cos(lambda): zeros at pi/2 + k pi.
  const auto l0 = spectrum(P, ProblemTag::L0p, ComplexWindow(-3.5, 3.5, -1, 1));
  const auto v = sorted_real(l0);
  REQUIRE(v.size() == 2);
  CHECK(std::abs(v[0] + kPi / 2) < 1e-8);
  CHECK(std::abs(v[1] - kPi / 2) < 1e-8);
}

TEST_CASE("condition S") {
  const ComplexWindow w(-3.5, 3.5, -1, 1);
  // Xi = even integers lie inside Lambda1 = integers.
  const auto bad = free_problem(StieltjesForm::point(kPi, kPi / 2, Spinor(1, 0), FormLabel::U2));
  const auto r = check_condition_S(bad, w, 1e-6);
  CHECK_FALSE(r.holds);
  CHECK(r.min_distance < 1e-8);
  // Xi = pi/2 + k pi.
  const auto good = free_problem(StieltjesForm::point(kPi, 1.0, Spinor(0, 1), FormLabel::U2));
  const auto s = check_condition_S(good, w, 1e-6);
  CHECK(s.holds);
  CHECK(std::abs(s.min_distance - (2.0 - kPi / 2)) < 1e-8);
  CHECK(min_distance({}, s.xi.eigenvalues) == std::numeric_limits<double>::infinity());
}
