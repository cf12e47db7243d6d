#include "doctest.h"
#include "ndirac/counterexamples.hpp"

using namespace ndirac;

TEST_CASE("scenario names") {
  CHECK(scenario_from_string("example2") == Scenario::Example2);
  CHECK(to_string(Scenario::Example1) == "example1");
  CHECK_THROWS_AS(scenario_from_string("example3"), DomainError);
}

TEST_CASE("example 1 construction") {
  const auto pair = build_example1(default_example1_profile());
  CHECK(pair.asymmetry >= kAsymmetryFloor);
  const auto& p = pair.P.omega();
  const auto& pt = pair.P_tilde.omega();
  double period = 0.0, mirror = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = 0.5 * kPi * (k + 0.5) / 100.0;
    period = std::max(period, std::abs(p.p(x + 0.5 * kPi) - p.p(x)));
    for (double y : {x, x + 0.5 * kPi}) mirror = std::max(mirror, std::abs(pt.p(y) - p.p(kPi - y)));
  }
  CHECK(period < 1e-12);
  CHECK(mirror < 1e-12);
  CHECK(is_two_point_problem(pair.P));

  CHECK_THROWS_AS(build_example1(PotentialOmega::free(0.5 * kPi)), DegenerateScenarioError);
  CHECK_THROWS_AS(build_example1(PotentialOmega::constant(0.5 * kPi, 0.3, 0.0)), DegenerateScenarioError);
  CHECK_THROWS_AS(build_example1(PotentialOmega::free(kPi)), DomainError);
}

TEST_CASE("example 2 construction") {
  const auto bump = default_example2_bump();
  CHECK_THROWS_AS(build_example2(bump, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(build_example2(bump, 0.2, 1.6), DomainError);
  // The hat starts at 0.6, inside [0, 0.65].
  CHECK_THROWS_AS(build_example2(bump, 0.2, 0.65), DomainError);
  const PotentialOmega symmetric(kPi, ScalarField::hat(0.5 * kPi, 0.6, 0.5, 0.0, kPi), ScalarField::zero());
  CHECK_THROWS_AS(build_example2(symmetric), DegenerateScenarioError);
  const auto pair = build_example2(bump);
  CHECK(pair.alpha == 0.2);
  CHECK(std::abs(pair.P.U2().atoms().front().t - (kPi - 0.2)) < 1e-15);
}

TEST_CASE("samples are deterministic and stay off the real axis") {
  const auto a = counterexample_samples(30, 9), b = counterexample_samples(30, 9);
  CHECK(a == b);
  for (const auto& z : a) {
    CHECK(std::abs(z.real()) <= 10.0);
    CHECK(std::abs(z.imag()) >= 0.3);
    CHECK(std::abs(z.imag()) <= 1.0);
  }
  CHECK_THROWS_AS(counterexample_samples(-1, 0), DomainError);
}

TEST_CASE("example 1 pair in a small window") {
  const auto pair = build_example1(default_example1_profile());
  const auto rep = verify_pair(pair, counterexample_samples(12, 1, 4.0), ComplexWindow(-4.25, 4.25, -1, 1));
  MESSAGE("M diff " << rep.max_M_difference << " omega diff " << rep.max_omega_difference << " S distance "
                    << rep.condition_S_distance);
  CHECK(rep.is_counterexample);
  CHECK_FALSE(rep.condition_S);
  CHECK(rep.xi_equals_lambda2);
  CHECK(rep.reproduces());
}

TEST_CASE("a problem paired with itself is not a counterexample") {
  const auto pair = build_example1(default_example1_profile());
  const CounterexamplePair same{Scenario::Example1, pair.P, pair.P, 0.0, 0.0, 0.0};
  const auto rep = verify_pair(same, counterexample_samples(5, 2, 3.0), ComplexWindow(-2.25, 2.25, -1, 1));
  CHECK(rep.max_M_difference == 0.0);
  CHECK_FALSE(rep.is_counterexample);
  CHECK_FALSE(rep.reproduces());
  REQUIRE_FALSE(rep.notes.empty());
  CHECK(rep.notes.back() == "not a counterexample: the potentials coincide");
}

TEST_CASE("samples on a pole of Delta1 are skipped") {
  const auto pair = build_example2(default_example2_bump());
  const CounterexamplePair free_pair{Scenario::Example2, pair.P.with_potential(PotentialOmega::free(kPi)),
                                     pair.P_tilde.with_potential(PotentialOmega::free(kPi)), 0.2, 0.5, 0.0};
  const auto rep = verify_pair(free_pair, {Complex(2.0, 0.0), Complex(0.5, 0.5)}, ComplexWindow(-1.5, 1.5, -1, 1));
  CHECK(rep.excluded == 1);
  // Free field: Delta2 = -sin(alpha lambda), so only 0 lies inside.
  CHECK(rep.lambda2_count == 1);
  CHECK(rep.lambda2_grid_error < 1e-8);
  CHECK(rep.lambda2_grid_complete);
}
