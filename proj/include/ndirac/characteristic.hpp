#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ndirac/dirac.hpp"
#include "ndirac/problem.hpp"

namespace ndirac {

enum class CharKind { Omega, Delta1, Delta2, Delta11 };

std::string to_string(CharKind kind);
CharKind char_kind_from_string(const std::string& name);

/// Values of U1, U2, V1, V2 on a pair of basis solutions: each row is (Q(Y1), Q(Y2)).
struct FormRows {
  Row2 U1, U2, V1, V2;
};

/// Same rows extended with the lambda-derivatives: (Q(X1), Q(X2), Q(X1'), Q(X2')).
struct FormRowsWithDerivative {
  Eigen::Matrix<Complex, 1, 4> U1, U2, V1, V2;
};

FundamentalMatrix problem_X(const DiracProblem& P, Complex lambda);
FundamentalMatrix problem_Z(const DiracProblem& P, Complex lambda);

FormRows form_rows(const DiracProblem& P, const FundamentalMatrix& Y);
FormRowsWithDerivative form_rows_with_derivative(const DiracProblem& P, Complex lambda);

/// The determinant of the two rows picked out by `kind` (the X-basis definition).
Complex char_from_rows(const FormRows& rows, CharKind kind);
/// d/dlambda of char_from_rows.
Complex char_derivative_from_rows(const FormRowsWithDerivative& rows, CharKind kind);

Complex char_eval(const DiracProblem& P, CharKind kind, Complex lambda);

/// Delta1 = -U1(Z2), Delta2 = -U2(Z2), Delta11 = U1(Z1). Omega has no such form.
Complex char_eval_via_Z(const DiracProblem& P, CharKind kind, Complex lambda);

/// Throws NearPoleError when |denominator| < guard * (1 + |lambda|) exp(|Im lambda| T).
void check_pole(Complex denominator, Complex lambda, double T, double guard, const char* what);
bool near_pole(Complex denominator, Complex lambda, double T, double guard);

enum class AuxKind { Phi, Theta, Psi };

/// phi = U1(X1) X2 - U1(X2) X1, theta = U2(X2) X1 - U2(X1) X2, psi = V1(X2) X1 - V1(X1) X2.
CombinedSolution aux_solution(const DiracProblem& P, AuxKind which, Complex lambda);
CombinedSolution aux_solution(const FundamentalMatrix& X, const FormRows& rows, AuxKind which);

/// Phi = psi / Delta1: the solution with U1(Phi) = 1 and Phi_1(T) = 0.
CombinedSolution weyl_solution_Phi(const DiracProblem& P, Complex lambda);

/// M = Delta2 / Delta1.
Complex weyl_M(const DiracProblem& P, Complex lambda);
/// M = U2(Phi), evaluated by applying U2 to the Phi trajectory.
Complex weyl_M_via_Phi(const DiracProblem& P, Complex lambda);

/// N = Delta1 / Delta11 from the X basis.
Complex ratio_N(const DiracProblem& P, Complex lambda);
/// N = -U1(Z2) / U1(Z1).
Complex ratio_N_via_Z(const DiracProblem& P, Complex lambda);

/// v1 = Z1 (which = 1) or v2 = Z2 + N Z1 (which = 2).
CombinedSolution v_solution(const DiracProblem& P, int which, Complex lambda);

struct IdentityResidual {
  std::string name;
  double x = 0.0;  // NaN for x-independent identities
  double residual = 0.0;
};

struct IdentityReport {
  Complex lambda;
  std::vector<IdentityResidual> entries;
  /// Identities left out because a denominator was inside the pole guard.
  std::vector<std::string> skipped;

  double max_residual() const;
  bool passes(double tol) const { return max_residual() <= tol; }
};

IdentityReport verify_identities(const DiracProblem& P, Complex lambda, const std::vector<double>& x_samples);

/// Thread-safe memo of form rows per lambda for one problem.
class CharacteristicEvaluator {
 public:
  explicit CharacteristicEvaluator(DiracProblem P) : P_(std::move(P)) {}

  const DiracProblem& problem() const { return P_; }
  FormRows rows(Complex lambda) const;
  FormRowsWithDerivative rows_with_derivative(Complex lambda) const;
  Complex operator()(CharKind kind, Complex lambda) const { return char_from_rows(rows(lambda), kind); }
  Complex derivative(CharKind kind, Complex lambda) const {
    return char_derivative_from_rows(rows_with_derivative(lambda), kind);
  }
  std::size_t cache_size() const;

 private:
  using Key = std::pair<double, double>;
  DiracProblem P_;
  mutable std::mutex mu_;
  mutable std::map<Key, FormRows> rows_;
  mutable std::map<Key, FormRowsWithDerivative> drows_;
};

}  // namespace ndirac
