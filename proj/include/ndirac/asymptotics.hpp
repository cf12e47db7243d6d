#pragma once

#include <string>
#include <vector>

#include "ndirac/spectra.hpp"

namespace ndirac {

/// Samples lambda = r exp(i arg) on a ray inside the sector delta <= arg <= pi - delta.
struct SectorRay {
  SectorRay(double delta = 0.3, double arg = kPi / 2, std::vector<double> radii = {25, 50, 100, 200});

  double delta;
  double arg;
  std::vector<double> radii;

  Complex point(double r) const { return std::polar(r, arg); }
};

inline constexpr double kMaxValidatedRadius = 200.0;

struct AsymptoticReport {
  std::string formula;
  std::vector<double> radii;
  std::vector<double> errors;
  /// Estimated error floor of each evaluation (integration error plus, for subdominant
  /// combinations, cancellation). Errors below it count as converged.
  std::vector<double> floors;
  bool monotone_decay = false;
  /// Least-squares slope of log(error) against log(r), over errors above the roundoff floor.
  double decay_exponent = 0.0;
  std::vector<std::string> notes;

  double final_error() const { return errors.empty() ? 0.0 : errors.back(); }
};

/// Fills monotone_decay and decay_exponent from radii/errors. Errors below `floor`
/// count as converged.
void summarize_decay(AsymptoticReport& rep, double floor = 1e-12);

/// X1 ~ (cos lx, sin lx), X2 ~ (-sin lx, cos lx); worst relative error over x = T/2, T.
AsymptoticReport check_Xk_asymptotics(const PotentialOmega& omega, const SectorRay& ray, double tol = 1e-10);

/// Delta1 ~ (h11 - i h12)/(2i) exp(-i l T), Delta11 ~ (h11 - i h12)/2 exp(-i l T).
AsymptoticReport check_char_asymptotics(const DiracProblem& P, const SectorRay& ray,
                                        CharKind kind = CharKind::Delta1);

/// Phi ~ exp(i l x)(1, -i)/(h11 - i h12), psi ~ exp(-i l (T-x))(1, -i)/(2i),
/// v1 ~ exp(-i l (T-x))(1, -i)/2. Returns reports for Phi, psi and v1 in that order.
std::vector<AsymptoticReport> check_weyl_solution_asymptotics(const DiracProblem& P, const SectorRay& ray, double x);

/// When U1 only charges [0, a]: phi ~ (h11 - i h12)/(2i) exp(-i l x)(1, i) and
/// v2 ~ exp(i l (T-x))(-i, 1), for x > a/2. Both are subdominant combinations, so each
/// error comes with a roundoff floor; radii where the floor exceeds 1e-3 are noted.
std::vector<AsymptoticReport> check_truncated_asymptotics(const DiracProblem& P, const SectorRay& ray, double x);

enum class GrowthQuantity { v1, Phi, phi, v2 };

std::string to_string(GrowthQuantity q);
GrowthQuantity growth_quantity_from_string(const std::string& name);

struct GrowthReport {
  GrowthQuantity quantity = GrowthQuantity::v1;
  double x = 0.0;
  std::vector<Complex> samples;
  std::vector<double> ratios;
  std::vector<Complex> filtered;
  std::vector<std::string> notes;
  double max_ratio = 0.0;
  double bound = 0.0;
  bool bounded = false;
};

/// ||quantity(x, lambda)|| / |exp(reference exponent)| over admissible samples. Samples
/// with Im lambda < 0, or within delta of a Lambda1 zero (Phi) or Lambda11 zero (v2),
/// are filtered out with a notice. Bounded iff the largest ratio is <= bound.
GrowthReport check_growth_bounds(const DiracProblem& P, GrowthQuantity q, double x,
                                 const std::vector<Complex>& samples, double delta = 0.3, double bound = 10.0);

}  // namespace ndirac
