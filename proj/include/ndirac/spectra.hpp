#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ndirac/characteristic.hpp"

namespace ndirac {

using AnalyticFn = std::function<Complex(Complex)>;
using ScaleFn = std::function<double(Complex)>;

/// Rectangle [re_min, re_max] x [im_min, im_max] in the lambda plane.
struct ComplexWindow {
  ComplexWindow(double re0, double re1, double im0, double im1);

  double re_min, re_max, im_min, im_max;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  Complex center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  bool contains(Complex z, double margin = 0.0) const {
    return z.real() >= re_min - margin && z.real() <= re_max + margin && z.imag() >= im_min - margin &&
           z.imag() <= im_max + margin;
  }
  /// Grown by `frac` of each side length on every side.
  ComplexWindow enlarged(double frac) const;
  ComplexWindow grown(double re_lo, double re_hi, double im_lo, double im_hi) const {
    return {re_min - re_lo, re_max + re_hi, im_min - im_lo, im_max + im_hi};
  }
};

struct ZeroCountOptions {
  /// Initial boundary samples per unit length (at least min_samples_per_edge per edge).
  double samples_per_unit = 4.0;
  int min_samples_per_edge = 8;
  int max_depth = 48;
  /// |f| below guard(lambda) on the contour means a zero sits on it. Empty = exact zero only.
  ScaleFn guard;
};

/// Winding number of f around the window boundary (counterclockwise), by phase
/// tracking with adaptive refinement until each half-segment turns less than pi/4.
/// Throws BoundaryZeroError when f (nearly) vanishes on the contour.
int count_zeros(const AnalyticFn& f, const ComplexWindow& w, const ZeroCountOptions& opt = {});

struct Eigenvalue {
  Complex lambda;
  int multiplicity = 1;
  double residual = 0.0;
};

struct SpectrumResult {
  std::string tag;
  ComplexWindow window{0, 1, 0, 1};
  std::vector<Eigenvalue> eigenvalues;
  int contour_count = 0;

  /// Eigenvalues repeated by multiplicity.
  std::vector<Complex> points() const;
  int total_multiplicity() const;
};

struct FindZerosOptions {
  ZeroCountOptions count;
  /// Residual bound: |f(lambda)| <= tol * scale(lambda). Empty scale = 1.
  double tol = 1e-8;
  ScaleFn scale;
  /// Boxes with count > 1 below this side are reported as one zero with the box count as multiplicity.
  double min_box = 1e-9;
  int max_newton = 60;
  int max_depth = 60;
};

/// All zeros of f in w with multiplicities: recursive quadrisection down to boxes
/// holding a single (possibly multiple) zero, then Newton polish with f'.
SpectrumResult find_zeros(const AnalyticFn& f, const AnalyticFn& df, const ComplexWindow& w,
                          const FindZerosOptions& opt = {});

/// d/dlambda of a characteristic function through the variational system.
Complex char_derivative(const DiracProblem& P, CharKind kind, Complex lambda);

enum class ProblemTag { L0, L1, L2, L11, L0p, L1p, L2p };

std::string to_string(ProblemTag tag);
ProblemTag problem_tag_from_string(const std::string& name);
CharKind char_kind_for(ProblemTag tag);

/// U1 = h1 . y(0), U2 = h0 . y(a): the two-point setting of the primed problems.
DiracProblem two_point_problem(const PotentialOmega& omega, const Spinor& h1, const Spinor& h0, double a,
                               Tolerances tol = {});
/// True when U1 is a pure jump and U2 a single atom strictly inside (0, T); `a` receives its location.
bool is_two_point_problem(const DiracProblem& P, double* a = nullptr);

/// Throws DegenerateCharacteristicError when |f| sits below the pole guard at 20
/// spread-out probe points (the function is numerically identically zero).
void check_not_degenerate(const CharacteristicEvaluator& ev, CharKind kind);

/// Eigenvalues of one of the boundary value problems inside w. The outer window is
/// nudged outward (at most 5 times) if a zero sits on its boundary.
SpectrumResult spectrum(const CharacteristicEvaluator& ev, ProblemTag tag, const ComplexWindow& w, double tol = -1.0);
SpectrumResult spectrum(const DiracProblem& P, ProblemTag tag, const ComplexWindow& w, double tol = -1.0);

struct ConditionSResult {
  bool holds = false;
  double min_distance = 0.0;
  SpectrumResult lambda1;
  SpectrumResult xi;
};

/// Condition S (Lambda1 and Xi disjoint) inside w: holds iff min distance > sep.
ConditionSResult check_condition_S(const DiracProblem& P, const ComplexWindow& w, double sep);
ConditionSResult check_condition_S(const CharacteristicEvaluator& ev, const ComplexWindow& w, double sep);

/// Smallest |a - b| over a in A, b in B (infinity if either is empty).
double min_distance(const std::vector<Eigenvalue>& A, const std::vector<Eigenvalue>& B);

}  // namespace ndirac
