#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ndirac/dop853.hpp"
#include "ndirac/potential.hpp"

namespace ndirac {

/// Dense solution of y' = A(x, lambda) y for one lambda. State is a Spinor for a
/// single solution, Mat2 for a fundamental matrix and Mat24 when the lambda-derivative
/// is carried along.
template <class State>
class DiracTrajectory {
 public:
  using state_type = State;

  DiracTrajectory(Complex lambda, DenseTrajectory<State> dense) : lambda_(lambda), dense_(std::move(dense)) {}

  Complex lambda() const { return lambda_; }
  State operator()(double x) const { return dense_(x); }
  State derivative(double x) const { return dense_.derivative(x); }
  double x_start() const { return dense_.x_start(); }
  double x_end() const { return dense_.x_end(); }
  double lo() const { return dense_.lo(); }
  double hi() const { return dense_.hi(); }
  bool covers(double x) const { return dense_.covers(x); }
  std::vector<double> mesh() const { return dense_.mesh(); }
  std::size_t accepted_steps() const { return dense_.accepted_steps(); }
  double tolerance() const { return dense_.tolerance(); }
  const DenseTrajectory<State>& dense() const { return dense_; }

 private:
  Complex lambda_;
  DenseTrajectory<State> dense_;
};

using SolutionTrajectory = DiracTrajectory<Spinor>;
using MatrixTrajectory = DiracTrajectory<Mat2>;

/// A solution expressed as a fixed combination of the columns of a fundamental
/// matrix: y(x) = Y(x) c. Shares the underlying trajectory.
class CombinedSolution {
 public:
  using state_type = Spinor;

  CombinedSolution(std::shared_ptr<const MatrixTrajectory> basis, Spinor coeffs)
      : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {}

  Spinor operator()(double x) const { return (*basis_)(x) * coeffs_; }
  Spinor derivative(double x) const { return basis_->derivative(x) * coeffs_; }
  double lo() const { return basis_->lo(); }
  double hi() const { return basis_->hi(); }
  bool covers(double x) const { return basis_->covers(x); }
  std::vector<double> mesh() const { return basis_->mesh(); }
  Complex lambda() const { return basis_->lambda(); }
  const Spinor& coefficients() const { return coeffs_; }
  const std::shared_ptr<const MatrixTrajectory>& basis() const { return basis_; }

  CombinedSolution operator*(Complex s) const { return {basis_, coeffs_ * s}; }
  // Reciprocal first: std::complex division is overflow-safe, Eigen's packet division is not.
  CombinedSolution operator/(Complex s) const { return {basis_, coeffs_ * (1.0 / s)}; }

 private:
  std::shared_ptr<const MatrixTrajectory> basis_;
  Spinor coeffs_;
};

/// Two solutions sharing lambda with the given anchor (0 for X, T for Z) where
/// the matrix equals the identity.
class FundamentalMatrix {
 public:
  FundamentalMatrix(std::shared_ptr<const MatrixTrajectory> traj, double anchor)
      : traj_(std::move(traj)), anchor_(anchor) {}

  Mat2 operator()(double x) const { return (*traj_)(x); }
  Complex determinant(double x) const { return (*traj_)(x).determinant(); }
  double anchor() const { return anchor_; }
  Complex lambda() const { return traj_->lambda(); }

  CombinedSolution column(int k) const {
    return {traj_, k == 0 ? Spinor(1.0, 0.0) : Spinor(0.0, 1.0)};
  }
  CombinedSolution combination(const Spinor& c) const { return {traj_, c}; }
  const std::shared_ptr<const MatrixTrajectory>& trajectory() const { return traj_; }

 private:
  std::shared_ptr<const MatrixTrajectory> traj_;
  double anchor_;
};

/// Integrator settings derived from a user tolerance.
Dop853Options integrator_options(Complex lambda, double tol);

/// Single solution of the Dirac system from (x0, y0) to x1 (either direction).
SolutionTrajectory solve_ivp(const PotentialOmega& omega, Complex lambda, double x0, const Spinor& y0, double x1,
                             double tol, std::span<const double> extra_stops = {});

/// X1, X2 with X(0) = I, integrated over [0, T].
FundamentalMatrix fundamental_X(const PotentialOmega& omega, Complex lambda, double tol,
                                std::span<const double> extra_stops = {});

/// Z1, Z2 with Z(T) = I, integrated backward over [0, T].
FundamentalMatrix fundamental_Z(const PotentialOmega& omega, Complex lambda, double tol,
                                std::span<const double> extra_stops = {});

/// [X | dX/dlambda] anchored at 0, via the variational system
/// W' = A W + (dA/dlambda) X, W(0) = 0.
DiracTrajectory<Mat24> fundamental_X_with_derivative(const PotentialOmega& omega, Complex lambda, double tol,
                                                     std::span<const double> extra_stops = {});

/// Largest |y'(x) - A(x) y(x)| / (|A(x)| |y(x)|) over step midpoints of the dense output.
template <class Traj>
double equation_residual(const Traj& traj, const PotentialOmega& omega) {
  double worst = 0.0;
  const auto mesh = traj.mesh();
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    const double x = 0.5 * (mesh[i] + mesh[i + 1]);
    const Mat2 a = coefficient_matrix(omega.p(x, x), omega.q(x, x), traj.lambda());
    const auto y = traj(x);
    const auto dy = traj.derivative(x);
    const double scale = a.norm() * y.norm();
    if (scale > 0) worst = std::max(worst, (dy - a * y).norm() / scale);
  }
  return worst;
}

}  // namespace ndirac
