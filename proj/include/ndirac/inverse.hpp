#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ndirac/spectra.hpp"

namespace ndirac {

/// Real Chebyshev coefficients of p then q on [0, T], `degree` + 1 of each.
struct PotentialParam {
  PotentialParam(double T, int degree, Eigen::VectorXd c);

  static PotentialParam zero(double T, int degree);
  /// Chebyshev projection of the real parts of p and q.
  static PotentialParam from_potential(const PotentialOmega& omega, int degree);

  double T;
  int degree;
  Eigen::VectorXd c;

  int size() const { return static_cast<int>(c.size()); }
  std::vector<double> p_coeffs() const;
  std::vector<double> q_coeffs() const;
  PotentialOmega to_potential() const;
};

/// Lambda1 and Lambda11 of problems sharing U1.
struct TwoSpectra {
  std::vector<Complex> lambda1;
  std::vector<Complex> lambda11;
};

/// Samples of M plus the zeros of omega.
struct WeylData {
  std::vector<Complex> mu;
  std::vector<Complex> M;
  std::vector<Complex> xi;
};

/// Spectra of the two-point problems L0', L1', L2' with U1 = h1 . y(0) and U2 = h0 . y(a).
struct ThreeSpectra {
  std::vector<Complex> l0;
  std::vector<Complex> l1;
  std::vector<Complex> l2;
  double a = 0.0;
  Spinor h1 = Spinor(1.0, 0.0);
  Spinor h0 = Spinor(1.0, 0.0);
};

struct SpectralData {
  std::variant<TwoSpectra, WeylData, ThreeSpectra> data;
  std::optional<ComplexWindow> window;

  std::string tag() const;
  /// Throws DomainError when the lists overlap (distance <= 1e-8), are malformed, or
  /// (ThreeSpectra) violate Lambda0' and Lambda1' disjointness.
  void validate() const;
};

/// Spectral data of P inside w: the spectra are computed, WeylData samples M at `mu`.
SpectralData make_two_spectra(const DiracProblem& P, const ComplexWindow& w, double tol = 1e-10);
SpectralData make_weyl_data(const DiracProblem& P, const std::vector<Complex>& mu, const ComplexWindow& w,
                            double tol = 1e-10);
/// The two-point problem is integrated with `integration`; misfits should use the same tolerances.
SpectralData make_three_spectra(const PotentialOmega& omega, const Spinor& h1, const Spinor& h0, double a,
                                const ComplexWindow& w, double tol = 1e-10, Tolerances integration = {});

struct MisfitResult {
  double value = 0.0;
  /// Weighted complex residuals; value is the sum of their squared moduli.
  std::vector<Complex> residuals;
  std::vector<std::string> notices;
};

/// The problem whose potential is replaced by c. For ThreeSpectra the forms come from
/// the data and `forms` only supplies the tolerances.
DiracProblem problem_for(const SpectralData& data, const PotentialParam& c, const DiracProblem& forms);

/// Residuals at the data: characteristic values at the target zeros weighted by
/// 1 / ((1 + |lambda|) exp(|Im lambda| T)), and M mismatches at the WeylData samples.
/// WeylData samples where Delta1 falls inside the pole guard are dropped with a notice
/// (residual 0).
MisfitResult misfit(const SpectralData& data, const PotentialParam& c, const DiracProblem& forms);

struct InversionOptions {
  int max_iter = 30;
  double target = 1e-24;
  double step_tol = 1e-10;
  double fd_step = 1e-6;
  double ridge = 1e-8;
  double initial_damping = 1e-3;
};

struct InversionResult {
  PotentialParam c;
  double misfit = 0.0;
  /// Misfit at c0 followed by the misfit after every accepted step.
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<Complex> residuals;
};

/// Forward-difference Jacobian of the real-split residual vector (re, im interleaved).
Eigen::MatrixXd residual_jacobian(const SpectralData& data, const PotentialParam& c, const DiracProblem& forms,
                                  double step, bool central = false);

/// Levenberg-Marquardt on the residuals plus ridge * ||c||^2. Running out of iterations
/// gives converged = false rather than an exception.
InversionResult invert(const SpectralData& data, const PotentialParam& c0, const DiracProblem& forms,
                       const InversionOptions& opt = {});

/// Delta_ref(lambda) * prod (lambda_n - lambda) / (lambda_n^ref - lambda), the reference
/// zeros being the reference problem's spectrum in the same window, paired in sorted
/// order. At a reference zero the singular factor is replaced by its limit.
Complex reconstruct_char_from_spectrum(const std::vector<Complex>& zeros, const DiracProblem& reference,
                                       CharKind kind, Complex lambda, const ComplexWindow& w);

/// Same, with the reference zeros supplied.
Complex reconstruct_char_from_zeros(const std::vector<Complex>& zeros, const std::vector<Complex>& reference_zeros,
                                    const DiracProblem& reference, CharKind kind, Complex lambda);

/// Delta1^a = -U1^a(Z2) and Delta11^a = U1^a(Z1), U1^a being U1 cut to [0, a].
Complex truncated_delta(const DiracProblem& P, CharKind kind, double a, Complex lambda);

struct HalvingLevel {
  double a = 0.0;
  /// max over lambda of |Delta^{a/2} - Delta^a -/+ int_{(a/2,a]} Z dsigma1| / growth, per problem.
  double telescoping_residual = 0.0;
  double telescoping_residual_other = 0.0;
  /// max over lambda of |Delta1^a - Delta1~^a| and |Delta11^a - Delta11~^a|, scaled likewise.
  double delta1_difference = 0.0;
  double delta11_difference = 0.0;
};

struct HalvingReport {
  std::vector<HalvingLevel> levels;
  double tol = 0.0;
  bool telescoping_ok = false;

  double max_telescoping_residual() const;
};

/// Levels a = T, T/2, T/4. The two problems must share U1.
HalvingReport halving_check(const DiracProblem& P, const DiracProblem& other, const std::vector<Complex>& lambdas,
                            double tol = 1e-8);

}  // namespace ndirac
