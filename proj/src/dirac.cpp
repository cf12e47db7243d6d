#include "ndirac/dirac.hpp"

#include <sstream>

namespace ndirac {

namespace {

void check_abscissa(const PotentialOmega& omega, double x, const char* what) {
  if (!(x >= 0.0 && x <= omega.T())) {
    std::ostringstream msg;
    msg << what << " = " << x << " outside [0, " << omega.T() << "]";
    throw DomainError(msg.str());
  }
}

std::vector<double> stop_points(const PotentialOmega& omega, std::span<const double> extra) {
  auto stops = omega.breakpoints();
  stops.insert(stops.end(), extra.begin(), extra.end());
  return stops;
}

template <class State>
DiracTrajectory<State> integrate(const PotentialOmega& omega, Complex lambda, double x0, const State& y0, double x1,
                                 double tol, std::span<const double> extra) {
  const auto stops = stop_points(omega, extra);
  auto rhs = [&omega, lambda](double x, const State& y, double hint) -> State {
    return coefficient_matrix(omega.p(x, hint), omega.q(x, hint), lambda) * y;
  };
  return {lambda, integrate_dop853<State>(rhs, x0, y0, x1, stops, integrator_options(lambda, tol))};
}

}  // namespace

Dop853Options integrator_options(Complex lambda, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-3)) {
    std::ostringstream msg;
    msg << "integrator tolerance " << tol << " outside [1e-14, 1e-3]";
    throw DomainError(msg.str());
  }
  Dop853Options opt;
  opt.rtol = tol;
  opt.atol = tol;
  opt.initial_step = 0.5 / (1.0 + std::abs(lambda));
  return opt;
}

SolutionTrajectory solve_ivp(const PotentialOmega& omega, Complex lambda, double x0, const Spinor& y0, double x1,
                             double tol, std::span<const double> extra_stops) {
  check_abscissa(omega, x0, "solve_ivp: x0");
  check_abscissa(omega, x1, "solve_ivp: x1");
  return integrate<Spinor>(omega, lambda, x0, y0, x1, tol, extra_stops);
}

FundamentalMatrix fundamental_X(const PotentialOmega& omega, Complex lambda, double tol,
                                std::span<const double> extra_stops) {
  auto traj = std::make_shared<const MatrixTrajectory>(
      integrate<Mat2>(omega, lambda, 0.0, Mat2::Identity(), omega.T(), tol, extra_stops));
  return {std::move(traj), 0.0};
}

FundamentalMatrix fundamental_Z(const PotentialOmega& omega, Complex lambda, double tol,
                                std::span<const double> extra_stops) {
  auto traj = std::make_shared<const MatrixTrajectory>(
      integrate<Mat2>(omega, lambda, omega.T(), Mat2::Identity(), 0.0, tol, extra_stops));
  return {std::move(traj), omega.T()};
}

DiracTrajectory<Mat24> fundamental_X_with_derivative(const PotentialOmega& omega, Complex lambda, double tol,
                                                     std::span<const double> extra_stops) {
  const auto stops = stop_points(omega, extra_stops);
  const Mat2 da = coefficient_matrix_dlambda();
  auto rhs = [&omega, lambda, &da](double x, const Mat24& y, double hint) -> Mat24 {
    const Mat2 a = coefficient_matrix(omega.p(x, hint), omega.q(x, hint), lambda);
    Mat24 out;
    out.leftCols<2>() = a * y.leftCols<2>();
    out.rightCols<2>() = a * y.rightCols<2>() + da * y.leftCols<2>();
    return out;
  };
  Mat24 y0 = Mat24::Zero();
  y0.leftCols<2>() = Mat2::Identity();
  return {lambda, integrate_dop853<Mat24>(rhs, 0.0, y0, omega.T(), stops, integrator_options(lambda, tol))};
}

}  // namespace ndirac
