#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ndirac {

using Complex = std::complex<double>;

/// Two-component solution value (y1, y2).
using Spinor = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using Row2 = Eigen::RowVector2cd;

/// Fundamental matrix augmented with its lambda-derivative: [Y | dY/dlambda].
using Mat24 = Eigen::Matrix<Complex, 2, 4>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors. Everything thrown by the library derives from std::runtime_error or
// std::domain_error so callers can catch broadly.

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct IntegrationFailure : std::runtime_error {
  IntegrationFailure(const std::string& what, double x)
      : std::runtime_error(what), abscissa(x) {}
  double abscissa;
};

struct NearPoleError : std::runtime_error {
  NearPoleError(const std::string& what, double magnitude)
      : std::runtime_error(what), denominator_magnitude(magnitude) {}
  double denominator_magnitude;
};

struct UnsupportedKindError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BoundaryZeroError : std::runtime_error {
  BoundaryZeroError(const std::string& what, Complex where)
      : std::runtime_error(what), location(where) {}
  Complex location;
};

struct UnresolvedClusterError : std::runtime_error {
  UnresolvedClusterError(const std::string& what, double re0, double re1,
                         double im0, double im1)
      : std::runtime_error(what), box{re0, re1, im0, im1} {}
  double box[4];
};

struct DegenerateCharacteristicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedAsymptoteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// exp(|Im lambda| * T) growth scale of solutions along a horizontal line.
inline double growth_scale(Complex lambda, double T) {
  return (1.0 + std::abs(lambda)) * std::exp(std::abs(lambda.imag()) * T);
}

}  // namespace ndirac
