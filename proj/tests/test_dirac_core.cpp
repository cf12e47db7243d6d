#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "ndirac/dirac.hpp"

using namespace ndirac;

namespace {

Mat2 free_X(Complex lambda, double x) {
  Mat2 m;
  m << std::cos(lambda * x), -std::sin(lambda * x), std::sin(lambda * x), std::cos(lambda * x);
  return m;
}

}  // namespace

TEST_CASE("free field fundamental matrix matches cos/sin") {
  const auto omega = PotentialOmega::free(kPi);
  for (Complex lambda : {Complex(0.0, 0.0), Complex(3.5, 0.0), Complex(-7.0, 0.8), Complex(20.0, -1.5)}) {
    const auto X = fundamental_X(omega, lambda, 1e-12);
    const auto Z = fundamental_Z(omega, lambda, 1e-12);
    double worst_x = 0, worst_z = 0;
    for (int i = 0; i <= 50; ++i) {
      const double x = kPi * i / 50.0;
      const double s = growth_scale(lambda, kPi);
      worst_x = std::max(worst_x, (X(x) - free_X(lambda, x)).norm() / s);
      worst_z = std::max(worst_z, (Z(x) - free_X(lambda, x - kPi)).norm() / s);
    }
    MESSAGE("lambda=" << lambda << " errX=" << worst_x << " errZ=" << worst_z);
    CHECK(worst_x < 1e-9);
    CHECK(worst_z < 1e-9);
  }
}

TEST_CASE("constant potential agrees with the matrix exponential") {
  const double p = 0.3, q = -0.2, T = 2.0;
  const auto omega = PotentialOmega::constant(T, p, q);
  const Complex lambda(2.0, 1.0);
  const auto X = fundamental_X(omega, lambda, 1e-12);
  const Mat2 a = coefficient_matrix(p, q, lambda);
  for (double x : {0.0, 0.37, 1.0, 1.9, 2.0}) {
    const Mat2 expected = (a * x).exp();
    CHECK((X(x) - expected).norm() / expected.norm() < 1e-10);
    CHECK(std::abs(X.determinant(x) - 1.0) < 1e-10);
  }
  CHECK(equation_residual(*X.trajectory(), omega) < 1e-6);
}

TEST_CASE("variational system gives dX/dlambda") {
  const auto omega = PotentialOmega::constant(1.5, 0.4, 0.1);
  const Complex lambda(1.3, -0.4);
  const auto W = fundamental_X_with_derivative(omega, lambda, 1e-12);
  const double h = 1e-5;
  const auto Xp = fundamental_X(omega, lambda + h, 1e-12);
  const auto Xm = fundamental_X(omega, lambda - h, 1e-12);
  for (double x : {0.5, 1.5}) {
    const Mat2 fd = (Xp(x) - Xm(x)) / (2 * h);
    const Mat2 dw = W(x).rightCols<2>();
    CHECK((fd - dw).norm() < 1e-7);
  }
}

TEST_CASE("abscissa outside [0,T] is rejected") {
  const auto omega = PotentialOmega::free(1.0);
  CHECK_THROWS_AS(solve_ivp(omega, 1.0, -0.1, Spinor(1, 0), 1.0, 1e-10), DomainError);
  CHECK_THROWS_AS(PotentialOmega::free(0.0), DomainError);
}

TEST_CASE("scalar field representations") {
  const auto hat = ScalarField::hat(1.0, 0.5, 2.0, 0.0, 3.0);
  CHECK(std::abs(hat(1.0) - 2.0) < 1e-15);
  CHECK(std::abs(hat(0.75) - 1.0) < 1e-15);
  CHECK(std::abs(hat(2.0)) < 1e-15);
  const auto cheb = ScalarField::chebyshev(std::vector<double>{1.0, 0.5, 0.25}, 0.0, 2.0);
  // T0 + 0.5 T1 + 0.25 T2 at t = 0.5: 1 + 0.25 + 0.25 * (2 * 0.25 - 1)
  CHECK(std::abs(cheb(1.5) - 1.125) < 1e-15);
  const auto refl = cheb.reflected(0.0, 2.0);
  CHECK(std::abs(refl(0.5) - cheb(1.5)) < 1e-15);
  const auto fit = ScalarField::trig(1.0, 1.3, 0.2).to_chebyshev(0.0, 2.0, 24);
  const ScalarField approx = ScalarField::chebyshev(fit, 0.0, 2.0);
  CHECK(std::abs(approx(0.7) - std::cos(1.3 * 0.7 + 0.2)) < 1e-13);
  CHECK_THROWS_AS(ScalarField::hat(0.2, 0.5, 1.0, 0.0, 3.0), DomainError);
  CHECK_THROWS_AS(ScalarField::piecewise({0.0, 1.0}, {}), DomainError);
}

TEST_CASE("reflection flips the sign of q") {
  const auto omega = PotentialOmega::chebyshev(kPi, {0.1, 0.3}, {0.2, -0.1});
  const auto r = omega.reflect();
  for (double x : {0.0, 0.4, 2.0}) {
    CHECK(std::abs(r.p(x) - omega.p(kPi - x)) < 1e-15);
    CHECK(std::abs(r.q(x) + omega.q(kPi - x)) < 1e-15);
  }
  // diag(1, -1) y(T - x) solves the reflected system.
  const Complex lambda(1.1, 0.3);
  const auto X = fundamental_X(omega, lambda, 1e-12);
  const Spinor yT = X(kPi).col(0);
  const auto y = solve_ivp(r, lambda, 0.0, Spinor(yT(0), -yT(1)), kPi, 1e-12);
  const Spinor end = y(kPi);
  CHECK(std::abs(end(0) - 1.0) < 1e-9);
  CHECK(std::abs(end(1)) < 1e-9);
  CHECK(omega.sup_distance(r) > 0.1);
  CHECK(omega.sup_distance(omega) == 0.0);
}
