#include "doctest.h"
#include "ndirac/characteristic.hpp"
#include "ndirac/random_problem.hpp"

using namespace ndirac;

namespace {

// T = pi, U1 = y1(0), U2 = y1(pi/2).
DiracProblem free_problem() {
  return DiracProblem(PotentialOmega::free(kPi), StieltjesForm::jump_only(kPi, Spinor(1, 0), FormLabel::U1),
                      StieltjesForm::point(kPi, kPi / 2, Spinor(1, 0), FormLabel::U2), Tolerances{1e-12, 1e-8, 1e-10});
}

const std::vector<Complex> kLambdas = {Complex(0.3, 0.0), Complex(2.7, 0.5), Complex(-5.2, -0.9), Complex(9.1, 1.0)};

}  // namespace

TEST_CASE("free-field characteristic functions") {
  const auto P = free_problem();
  for (Complex l : kLambdas) {
    const double s = growth_scale(l, kPi);
    CHECK(std::abs(char_eval(P, CharKind::Delta1, l) + std::sin(l * kPi)) < 1e-10 * s);
    CHECK(std::abs(char_eval(P, CharKind::Delta2, l) + std::sin(l * kPi / 2.0)) < 1e-10 * s);
    CHECK(std::abs(char_eval(P, CharKind::Omega, l) + std::sin(l * kPi / 2.0)) < 1e-10 * s);
    CHECK(std::abs(char_eval(P, CharKind::Delta11, l) - std::cos(l * kPi)) < 1e-10 * s);
    const Complex M = weyl_M(P, l);
    CHECK(std::abs(M - 1.0 / (2.0 * std::cos(l * kPi / 2.0))) < 1e-9 * std::abs(M));
  }
}

TEST_CASE("X and Z paths agree on random problems") {
  Rng rng(11);
  for (int k = 0; k < 4; ++k) {
    const auto P = random_problem(rng, {.ode_tol = 1e-12});
    for (int j = 0; j < 3; ++j) {
      const Complex l = random_lambda(rng, -10, 10, -1, 1);
      const double s = growth_scale(l, P.T());
      for (CharKind kind : {CharKind::Delta1, CharKind::Delta2, CharKind::Delta11})
        CHECK(std::abs(char_eval(P, kind, l) - char_eval_via_Z(P, kind, l)) < 1e-8 * s);
      const Complex d1 = char_eval(P, CharKind::Delta1, l);
      if (!near_pole(d1, l, P.T(), 1e-6)) {
        const Complex M = weyl_M(P, l);
        CHECK(std::abs(M - weyl_M_via_Phi(P, l)) < 1e-8 * (1.0 + std::abs(M)));
      }
    }
  }
  CHECK_THROWS_AS(char_eval_via_Z(free_problem(), CharKind::Omega, 1.0), UnsupportedKindError);
}

TEST_CASE("identity residuals on a random problem") {
  Rng rng(5);
  const auto P = random_problem(rng, {.ode_tol = 1e-12});
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back((i + 0.5) * P.T() / 10);
  for (int j = 0; j < 4; ++j) {
    const auto rep = verify_identities(P, random_lambda(rng, -10, 10, -1, 1), xs);
    CHECK_FALSE(rep.entries.empty());
    MESSAGE("identity residual " << rep.max_residual());
    CHECK(rep.passes(1e-8));
  }
}

TEST_CASE("poles of M are refused") {
  const auto P = free_problem();
  // Delta1 = -sin(pi lambda) vanishes at the integers.
  CHECK_THROWS_AS(weyl_M(P, 1.0), NearPoleError);
  CHECK_THROWS_AS(weyl_M(P, Complex(3.0, 1e-13)), NearPoleError);
  CHECK_NOTHROW(weyl_M(P, Complex(3.0, 1e-3)));
  CHECK(near_pole(1e-20, 5.0, kPi, 1e-10));
  CHECK_FALSE(near_pole(1e-3, 5.0, kPi, 1e-10));
  CHECK_THROWS_AS(check_pole(0.0, 1.0, kPi, 1e-10, "test"), NearPoleError);
  const auto rep = verify_identities(P, 2.0, {1.0});
  CHECK_FALSE(rep.skipped.empty());
}

TEST_CASE("aux solutions satisfy their boundary conditions") {
  Rng rng(21);
  const auto P = random_problem(rng, {.ode_tol = 1e-12});
  const Complex l(1.7, 0.4);
  const double s = growth_scale(l, P.T());
  const auto phi = aux_solution(P, AuxKind::Phi, l);
  CHECK(std::abs(apply_form(P.U1(), phi)) < 1e-9 * s * s);
  const auto Phi = weyl_solution_Phi(P, l);
  CHECK(std::abs(apply_form(P.U1(), Phi) - 1.0) < 1e-9 * s);
  CHECK(std::abs(Phi(P.T())(0)) < 1e-9 * s);
  const auto v1 = v_solution(P, 1, l);
  CHECK(std::abs(v1(P.T())(0) - 1.0) < 1e-12);
  CHECK(std::abs(v1(P.T())(1)) < 1e-12);
  CHECK_THROWS_AS(v_solution(P, 3, l), DomainError);
}

TEST_CASE("evaluator caches rows and matches direct evaluation") {
  const auto P = free_problem();
  const CharacteristicEvaluator ev(P);
  const Complex l(2.2, 0.3);
  CHECK(ev(CharKind::Delta1, l) == char_eval(P, CharKind::Delta1, l));
  (void)ev(CharKind::Omega, l);
  CHECK(ev.cache_size() == 1);
  // d/dl (-sin(pi l)) = -pi cos(pi l)
  CHECK(std::abs(ev.derivative(CharKind::Delta1, l) + kPi * std::cos(kPi * l)) < 1e-9 * growth_scale(l, kPi));
  CHECK(char_kind_from_string("delta11") == CharKind::Delta11);
  CHECK_THROWS_AS(char_kind_from_string("delta3"), UnsupportedKindError);
}
