#pragma once

#include <vector>

#include "ndirac/forms.hpp"
#include "ndirac/potential.hpp"

namespace ndirac {

struct Tolerances {
  double ode = 1e-10;
  double root = 1e-8;
  /// Ratios refuse denominators below pole_guard * (1 + |lambda|) * exp(|Im lambda| T).
  double pole_guard = 1e-10;
};

/// Potential plus the two boundary forms. Immutable once built.
class DiracProblem {
 public:
  DiracProblem(PotentialOmega omega, StieltjesForm u1, StieltjesForm u2, Tolerances tol = {});

  double T() const { return omega_.T(); }
  const PotentialOmega& omega() const { return omega_; }
  const StieltjesForm& U1() const { return u1_; }
  const StieltjesForm& U2() const { return u2_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Integrator stop points: potential breaks plus the forms' atoms and support ends.
  const std::vector<double>& stop_points() const { return stops_; }

  DiracProblem with_potential(PotentialOmega omega) const { return {std::move(omega), u1_, u2_, tol_}; }
  DiracProblem with_forms(StieltjesForm u1, StieltjesForm u2) const {
    return {omega_, std::move(u1), std::move(u2), tol_};
  }
  DiracProblem with_tolerances(Tolerances tol) const { return {omega_, u1_, u2_, tol}; }

 private:
  PotentialOmega omega_;
  StieltjesForm u1_;
  StieltjesForm u2_;
  Tolerances tol_;
  std::vector<double> stops_;
};

}  // namespace ndirac
