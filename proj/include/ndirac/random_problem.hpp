#pragma once

#include <cstdint>
#include <random>

#include "ndirac/problem.hpp"

namespace ndirac {

struct RandomProblemOptions {
  double T = kPi;
  int potential_degree = 6;
  double potential_amplitude = 0.5;  // coefficients uniform in [-a, a]
  bool complex_potential = true;
  int max_atoms = 2;
  bool densities = true;
  double ode_tol = 1e-10;
};

using Rng = std::mt19937_64;

/// Chebyshev potential on [0, T] with coefficients uniform in [-amplitude, amplitude].
PotentialOmega random_potential(Rng& rng, double T, int degree, double amplitude, bool complex_coeffs);

/// A form with a random jump, up to max_atoms atoms and optionally a low-degree density.
StieltjesForm random_form(Rng& rng, double T, int max_atoms, bool density, FormLabel label);

DiracProblem random_problem(Rng& rng, const RandomProblemOptions& opt = {});
DiracProblem random_problem(std::uint64_t seed, const RandomProblemOptions& opt = {});

/// Uniform lambda in [re0, re1] x [im0, im1].
Complex random_lambda(Rng& rng, double re0, double re1, double im0, double im1);

}  // namespace ndirac
