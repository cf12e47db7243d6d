#include "doctest.h"
#include "ndirac/asymptotics.hpp"
#include "ndirac/random_problem.hpp"

using namespace ndirac;

namespace {

DiracProblem dirichlet(PotentialOmega omega, double t2 = kPi / 2) {
  const double T = omega.T();
  return DiracProblem(std::move(omega), StieltjesForm::jump_only(T, Spinor(1, 0), FormLabel::U1),
                      StieltjesForm::point(T, t2, Spinor(1, 0), FormLabel::U2), Tolerances{1e-12, 1e-8, 1e-10});
}

}  // namespace

TEST_CASE("sector ray validation") {
  CHECK_THROWS_AS(SectorRay(0.0), DomainError);
  CHECK_THROWS_AS(SectorRay(0.3, 0.1), DomainError);
  CHECK_THROWS_AS(SectorRay(0.3, 1.0, {50, 25}), DomainError);
  CHECK_THROWS_AS(SectorRay(0.3, 1.0, {}), DomainError);
  const SectorRay ray;
  CHECK(std::abs(ray.point(10.0) - Complex(0, 10)) < 1e-12);
  CHECK_THROWS_AS(check_char_asymptotics(dirichlet(PotentialOmega::free(kPi)), SectorRay(0.3, 1.5, {100, 400})),
                  DomainError);
}

TEST_CASE("free-field Delta1 matches its leading term") {
  const auto rep = check_char_asymptotics(dirichlet(PotentialOmega::free(kPi)), SectorRay(0.3, kPi / 2, {10, 50}));
  // Relative error is exp(-2 pi Im lambda).
  CHECK(rep.errors[0] < 1e-8);
  CHECK(rep.errors[1] < 1e-8);
  const auto d11 = check_char_asymptotics(dirichlet(PotentialOmega::free(kPi)), SectorRay(0.3, kPi / 2, {10, 50}),
                                          CharKind::Delta11);
  CHECK(d11.final_error() < 1e-8);
}

TEST_CASE("leading behaviour of X for a smooth potential") {
  const auto omega = PotentialOmega::chebyshev(kPi, {0.3, 0.1, -0.2}, {0.1, 0.2});
  const auto rep = check_Xk_asymptotics(omega, SectorRay(0.3, 1.2));
  MESSAGE("X errors " << rep.errors[0] << " .. " << rep.final_error() << " exponent " << rep.decay_exponent);
  CHECK(rep.monotone_decay);
  CHECK(rep.decay_exponent < -0.5);
}

TEST_CASE("Delta1 asymptotics on a random problem") {
  const auto P = random_problem(1, {.ode_tol = 1e-12});
  const auto rep = check_char_asymptotics(P, SectorRay());
  MESSAGE("Delta1 errors " << rep.errors[0] << " .. " << rep.final_error());
  CHECK(rep.monotone_decay);
  CHECK(rep.final_error() < 1e-2);
}

TEST_CASE("Weyl solution asymptotics") {
  const auto P = dirichlet(PotentialOmega::chebyshev(kPi, {0.2, -0.1}, {0.15}));
  const auto reps = check_weyl_solution_asymptotics(P, SectorRay(), kPi / 2);
  REQUIRE(reps.size() == 3);
  for (const auto& r : reps) {
    MESSAGE(r.formula << " final error " << r.final_error());
    CHECK(r.monotone_decay);
    CHECK(r.final_error() < 1e-2);
  }
  CHECK_THROWS_AS(check_weyl_solution_asymptotics(P, SectorRay(), 0.1), DomainError);
}

TEST_CASE("truncated asymptotics need U1 supported away from T") {
  const auto P = dirichlet(PotentialOmega::chebyshev(kPi, {0.2, -0.1}, {0.15}));
  const auto reps = check_truncated_asymptotics(P, SectorRay(0.3, kPi / 2, {25, 50, 100}), 2.0);
  REQUIRE(reps.size() == 2);
  MESSAGE("phi errors " << reps[0].errors[0] << " .. " << reps[0].final_error());
  CHECK(reps[0].monotone_decay);
  CHECK(reps[0].final_error() < 1e-2);
  // v2 is subdominant: far from T the cancellation floor swamps it and is reported.
  CHECK_FALSE(reps[1].notes.empty());
  const auto near_end = check_truncated_asymptotics(P, SectorRay(0.3, kPi / 2, {10, 20, 40}), 3.0);
  MESSAGE("v2 errors near T " << near_end[1].errors[0] << " .. " << near_end[1].final_error());
  CHECK(near_end[1].notes.empty());
  CHECK(near_end[1].monotone_decay);
  const FormAtom end{kPi, Spinor(1, 0)};
  const auto Q = P.with_forms(StieltjesForm(kPi, Spinor(1, 0), {end}, {}, FormLabel::U1), P.U2());
  CHECK_THROWS_AS(check_truncated_asymptotics(Q, SectorRay(), 2.0), UnsupportedAsymptoteError);
  const auto R = P.with_forms(StieltjesForm::jump_only(kPi, Spinor(1, Complex(0, -1)), FormLabel::U1), P.U2());
  CHECK_THROWS_AS(check_char_asymptotics(R, SectorRay()), UnsupportedAsymptoteError);
}

TEST_CASE("growth bounds filter lower half-plane and near-zero samples") {
  const auto P = dirichlet(PotentialOmega::constant(kPi, 0.2, 0.1));
  const std::vector<Complex> samples = {Complex(3.0, 2.0), Complex(-5.0, 4.0), Complex(1.0, -1.0), Complex(2.05, 0.1)};
  const auto v1 = check_growth_bounds(P, GrowthQuantity::v1, 1.0, samples);
  CHECK(v1.filtered.size() == 1);
  CHECK(v1.bounded);
  const auto Phi = check_growth_bounds(P, GrowthQuantity::Phi, 1.0, samples);
  CHECK(Phi.filtered.size() == 2);  // 2.05 + 0.1i sits next to an eigenvalue near 2
  CHECK(Phi.bounded);
  CHECK(growth_quantity_from_string("v2") == GrowthQuantity::v2);
  CHECK_THROWS_AS(growth_quantity_from_string("w"), UnsupportedKindError);
  CHECK_THROWS_AS(check_growth_bounds(P, GrowthQuantity::v1, kPi, samples), DomainError);
}
