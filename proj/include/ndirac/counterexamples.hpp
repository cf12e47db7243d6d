#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndirac/spectra.hpp"

namespace ndirac {

enum class Scenario { Example1, Example2 };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

inline constexpr double kAsymmetryFloor = 0.1;

/// P and the problem P~ with the reflected potential and the same forms.
struct CounterexamplePair {
  Scenario scenario = Scenario::Example1;
  DiracProblem P;
  DiracProblem P_tilde;
  double alpha = 0.0;
  double alpha0 = 0.0;
  /// sup |Omega - Omega~| (sum of the p and q deviations).
  double asymmetry = 0.0;
};

/// Omega on (0, pi/2) repeated on (pi/2, pi); T = pi, U1 = y1(0), U2 = y1(pi/2).
/// Throws DegenerateScenarioError when the extended potential is within `floor` of its reflection.
CounterexamplePair build_example1(const PotentialOmega& half_profile, double floor = kAsymmetryFloor,
                                  Tolerances tol = {});

/// A bump vanishing on [0, alpha0] and [pi - alpha0, pi]; T = pi, U1 = y1(0), U2 = y1(pi - alpha).
/// Throws DomainError unless 0 < alpha < alpha0 < pi/2 and the bump vanishes near both ends.
CounterexamplePair build_example2(const PotentialOmega& bump, double alpha = 0.2, double alpha0 = 0.5,
                                  double floor = kAsymmetryFloor, Tolerances tol = {});

/// p = 0.5 * hat of half-width 0.6 centred at 1.2, q = 0.
PotentialOmega default_example2_bump();
/// p = 0.4 x / (pi/2), q = 0 on (0, pi/2).
PotentialOmega default_example1_profile();

/// Deterministic samples with |Re| <= re_max and 0.3 <= |Im| <= 1, away from the real-axis spectra.
std::vector<Complex> counterexample_samples(int n, std::uint64_t seed, double re_max = 10.0);

ComplexWindow default_window(Scenario s);

struct PairReport {
  Scenario scenario = Scenario::Example1;
  int samples = 0;
  int excluded = 0;
  double max_M_difference = 0.0;
  double max_omega_difference = 0.0;
  double max_delta1_difference = 0.0;
  double max_delta2_difference = 0.0;
  double potential_distance = 0.0;

  bool condition_S = false;
  double condition_S_distance = 0.0;
  int lambda1_count = 0;
  int xi_count = 0;
  int lambda2_count = 0;

  /// Example 1: largest distance from a point of Xi to Lambda2 or back; counts must agree.
  double xi_lambda2_distance = 0.0;
  bool xi_equals_lambda2 = false;
  /// Example 2: largest distance from a Lambda2 point to pi n / alpha, and whether every
  /// such multiple in the window was found.
  double lambda2_grid_error = 0.0;
  bool lambda2_grid_complete = false;
  double lambda1_lambda2_margin = 0.0;

  double tol = 0.0;
  bool is_counterexample = false;
  std::vector<std::string> notes;

  /// All findings match the scenario's expectations.
  bool reproduces() const;
};

/// Compares the pair at the samples and computes the spectra it needs inside w.
PairReport verify_pair(const CounterexamplePair& pair, const std::vector<Complex>& samples, const ComplexWindow& w,
                       double tol = 1e-7);

}  // namespace ndirac
