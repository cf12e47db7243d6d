#include "doctest.h"
#include "ndirac/dirac.hpp"
#include "ndirac/forms.hpp"

using namespace ndirac;

namespace {

// Free field: X1 = (cos lx, sin lx), X2 = (-sin lx, cos lx).
StieltjesForm sample_form(double T) {
  FormDensity d{ScalarField::constant(1.0), ScalarField::zero(), 0.5, 2.0};
  return StieltjesForm(T, Spinor(1.0, 0.5), {{1.0, Spinor(0.3, -0.2)}}, d);
}

Complex sample_form_on_X1(Complex l) {
  return 1.0 + 0.3 * std::cos(l) - 0.2 * std::sin(l) + (std::sin(2.0 * l) - std::sin(0.5 * l)) / l;
}

Complex sample_form_on_X2(Complex l) {
  return 0.5 - 0.3 * std::sin(l) - 0.2 * std::cos(l) + (std::cos(2.0 * l) - std::cos(0.5 * l)) / l;
}

}  // namespace

TEST_CASE("form validation") {
  CHECK_THROWS_AS(StieltjesForm(0.0, Spinor(1, 0)), DomainError);
  CHECK_THROWS_AS(StieltjesForm::jump_only(kPi, Spinor::Zero(), FormLabel::U1), DomainError);
  CHECK_NOTHROW(StieltjesForm::jump_only(kPi, Spinor::Zero(), FormLabel::U2));
  CHECK_THROWS_AS(StieltjesForm::point(kPi, 0.0, Spinor(1, 0)), DomainError);
  CHECK_THROWS_AS(StieltjesForm::point(kPi, 4.0, Spinor(1, 0)), DomainError);
  CHECK_NOTHROW(StieltjesForm::point(kPi, kPi, Spinor(1, 0)));
  FormDensity bad{ScalarField::constant(1.0), ScalarField::zero(), 2.0, 1.0};
  CHECK_THROWS_AS(StieltjesForm(kPi, Spinor(1, 0), {}, bad), DomainError);
  Spinor inf(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(StieltjesForm::jump_only(kPi, inf), DomainError);
}

TEST_CASE("atoms are sorted and zero densities dropped") {
  const StieltjesForm f(kPi, Spinor(1, 0), {{2.0, Spinor(1, 0)}, {0.5, Spinor(0, 1)}},
                        FormDensity{ScalarField::zero(), ScalarField::zero(), 0.0, 1.0});
  REQUIRE(f.atoms().size() == 2);
  CHECK(f.atoms()[0].t == 0.5);
  CHECK(f.atoms()[1].t == 2.0);
  CHECK_FALSE(f.density().has_value());
  CHECK(f.stop_points() == std::vector<double>{0.5, 2.0});
}

TEST_CASE("free-field form values match closed forms") {
  const double T = 2.5;
  const auto form = sample_form(T);
  const auto omega = PotentialOmega::free(T);
  for (Complex l : {Complex(0.7, 0.0), Complex(-3.1, 0.4), Complex(8.0, -1.0)}) {
    const auto X = fundamental_X(omega, l, 1e-12);
    const Row2 row = apply_form(form, *X.trajectory());
    CHECK(std::abs(row(0) - sample_form_on_X1(l)) < 1e-10 * growth_scale(l, T));
    CHECK(std::abs(row(1) - sample_form_on_X2(l)) < 1e-10 * growth_scale(l, T));
    CHECK(std::abs(apply_form(form, X.column(0)) - row(0)) < 1e-12 * growth_scale(l, T));
    CHECK(apply_endpoint(EndpointForm(2), *X.trajectory(), T)(0) == X(T)(1, 0));
  }
  CHECK_THROWS_AS(EndpointForm(3), DomainError);
}

TEST_CASE("pairing is bilinear without conjugation") {
  const double T = 2.5;
  const auto form = sample_form(T);
  const auto X = fundamental_X(PotentialOmega::constant(T, 0.2, Complex(0.1, 0.3)), Complex(1.5, 0.5), 1e-12);
  const Row2 row = apply_form(form, *X.trajectory());
  const Spinor c(Complex(0.0, 2.0), Complex(-1.0, 0.5));
  const Complex direct = apply_form(form, X.combination(c));
  CHECK(std::abs(direct - (row(0) * c(0) + row(1) * c(1))) < 1e-12 * std::abs(direct));
}

TEST_CASE("truncate plus restrict recovers the form") {
  const double T = 2.5;
  const auto form = sample_form(T);
  const auto X = fundamental_X(PotentialOmega::constant(T, 0.4, -0.1), Complex(-2.0, 0.3), 1e-12);
  for (double a : {0.25, 0.75, 1.0, 1.5, T}) {
    const auto head = form.truncate(a);
    Row2 sum = apply_form(head, *X.trajectory());
    if (a < T) sum += apply_form(form.restrict_to(a, T), *X.trajectory());
    const Row2 full = apply_form(form, *X.trajectory());
    CHECK((sum - full).norm() < 1e-11 * full.norm());
  }
  const auto head = form.truncate(1.0);
  CHECK(head.atoms().size() == 1);  // atom at t = a stays
  CHECK(form.truncate(0.9).atoms().empty());
  CHECK(form.restrict_to(1.0, T).atoms().empty());
  CHECK(form.restrict_to(0.9, T).jump().norm() == 0.0);
  CHECK_FALSE(form.truncate(0.25).density().has_value());
  CHECK_THROWS_AS(form.truncate(0.0), DomainError);
  CHECK_THROWS_AS(form.restrict_to(1.0, 1.0), DomainError);
}

TEST_CASE("uncovered abscissa is rejected") {
  const auto form = StieltjesForm::point(2.0, 1.5, Spinor(1, 0));
  const auto y = solve_ivp(PotentialOmega::free(2.0), 1.0, 0.0, Spinor(1, 0), 1.0, 1e-10);
  CHECK_THROWS_AS(apply_form(form, y), DomainError);
}
