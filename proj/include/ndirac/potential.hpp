#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "ndirac/chebyshev.hpp"
#include "ndirac/types.hpp"

namespace ndirac {

// Representations of one scalar coefficient function on an interval.

struct ZeroFn {};

struct ConstantFn {
  Complex value;
};

/// amplitude * cos(frequency * x + phase)
struct TrigFn {
  Complex amplitude;
  double frequency = 1.0;
  double phase = 0.0;
};

/// Chebyshev series on [lo, hi].
struct ChebyshevFn {
  ChebCoeffs<Complex> coeffs;
  double lo = 0.0;
  double hi = 1.0;
};

/// Panels [breaks[i], breaks[i+1]], each carrying a local Chebyshev series.
struct PiecewiseChebyshevFn {
  std::vector<double> breaks;
  std::vector<ChebCoeffs<Complex>> panels;
};

/// Immutable scalar function used for p, q and form densities.
class ScalarField {
 public:
  using Rep = std::variant<ZeroFn, ConstantFn, TrigFn, ChebyshevFn, PiecewiseChebyshevFn>;

  ScalarField() : rep_(ZeroFn{}) {}
  ScalarField(Rep rep);  // NOLINT(google-explicit-constructor)

  static ScalarField zero() { return ScalarField(); }
  static ScalarField constant(Complex v) { return ScalarField(ConstantFn{v}); }
  static ScalarField trig(Complex amplitude, double frequency, double phase) {
    return ScalarField(TrigFn{amplitude, frequency, phase});
  }
  static ScalarField chebyshev(ChebCoeffs<Complex> c, double lo, double hi);
  static ScalarField chebyshev(const std::vector<double>& c, double lo, double hi);
  static ScalarField piecewise(std::vector<double> breaks, std::vector<ChebCoeffs<Complex>> panels);
  /// Piecewise-linear hat of height `amplitude` supported on [center-half_width, center+half_width].
  static ScalarField hat(double center, double half_width, Complex amplitude, double lo, double hi);

  /// Value at x. `hint` selects the panel for piecewise fields when x sits on a break;
  /// pass any point inside the intended panel (NaN means "no preference").
  Complex operator()(double x, double hint = std::numeric_limits<double>::quiet_NaN()) const;

  /// f(lo + hi - x) for a field living on [lo, hi].
  ScalarField reflected(double lo, double hi) const;
  ScalarField scaled(Complex s) const;
  /// Chebyshev series of the field on [lo, hi] (exact when the rep already is one, else interpolated).
  ChebCoeffs<Complex> to_chebyshev(double lo, double hi, int degree) const;

  /// Interior discontinuities of the representation (panel breaks).
  std::vector<double> breakpoints() const;
  bool is_zero() const { return std::holds_alternative<ZeroFn>(rep_); }
  const Rep& rep() const { return rep_; }

 private:
  Rep rep_;
};

/// The potential Omega(x) = [[p, q], [q, -p]] on [0, T].
class PotentialOmega {
 public:
  PotentialOmega(double T, ScalarField p, ScalarField q);

  static PotentialOmega free(double T) { return {T, ScalarField::zero(), ScalarField::zero()}; }
  static PotentialOmega constant(double T, Complex p, Complex q) {
    return {T, ScalarField::constant(p), ScalarField::constant(q)};
  }
  /// Chebyshev coefficients on [0, T] for p and q (degree = size - 1).
  static PotentialOmega chebyshev(double T, const std::vector<double>& p, const std::vector<double>& q);

  double T() const { return T_; }
  const ScalarField& p() const { return p_; }
  const ScalarField& q() const { return q_; }

  Complex p(double x, double hint = std::numeric_limits<double>::quiet_NaN()) const { return p_(x, hint); }
  Complex q(double x, double hint = std::numeric_limits<double>::quiet_NaN()) const { return q_(x, hint); }

  /// The reflected potential (p(T - x), -q(T - x)). If y solves the system for this
  /// potential, diag(1, -1) y(T - x) solves it for the reflected one. For q == 0 this is
  /// the plain reflection Omega(T - x).
  PotentialOmega reflect() const;

  /// Sorted interior breakpoints of p and q.
  std::vector<double> breakpoints() const;

  /// max |p - p~| + |q - q~| sampled on a uniform grid (both on the same interval).
  double sup_distance(const PotentialOmega& other, int samples = 2001) const;

 private:
  double T_;
  ScalarField p_;
  ScalarField q_;
};

/// A(x, lambda) = -B (lambda I - Omega(x)) = [[q, -(lambda + p)], [lambda - p, -q]].
Mat2 coefficient_matrix(const PotentialOmega& omega, Complex lambda, double x);

inline Mat2 coefficient_matrix(Complex p, Complex q, Complex lambda) {
  Mat2 a;
  a << q, -(lambda + p), lambda - p, -q;
  return a;
}

/// dA/dlambda, constant.
inline Mat2 coefficient_matrix_dlambda() {
  Mat2 a;
  a << 0.0, -1.0, 1.0, 0.0;
  return a;
}

}  // namespace ndirac
