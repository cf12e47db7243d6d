#include "ndirac/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ndirac/parallel.hpp"

namespace ndirac {

std::string to_string(Scenario s) { return s == Scenario::Example1 ? "example1" : "example2"; }

Scenario scenario_from_string(const std::string& name) {
  if (name == "example1") return Scenario::Example1;
  if (name == "example2") return Scenario::Example2;
  throw DomainError("unknown scenario '" + name + "' (expected example1 or example2)");
}

namespace {

constexpr int kExtensionDegree = 32;

// f on [0, L] repeated on [L, 2L] as a piecewise field.
ScalarField periodic_extension(const ScalarField& f, double L) {
  if (f.is_zero()) return f;
  PiecewiseChebyshevFn out;
  if (const auto* pw = std::get_if<PiecewiseChebyshevFn>(&f.rep())) {
    if (std::abs(pw->breaks.front()) > 1e-14 || std::abs(pw->breaks.back() - L) > 1e-14 * L)
      throw DomainError("half profile pieces must cover [0, pi/2] exactly");
    out.breaks = pw->breaks;
    out.breaks.front() = 0.0;
    out.breaks.back() = L;
    for (std::size_t i = 1; i < pw->breaks.size(); ++i) out.breaks.push_back(pw->breaks[i] + L);
    out.breaks.back() = 2.0 * L;
    out.panels = pw->panels;
    out.panels.insert(out.panels.end(), pw->panels.begin(), pw->panels.end());
  } else {
    const auto c = f.to_chebyshev(0.0, L, kExtensionDegree);
    out.breaks = {0.0, L, 2.0 * L};
    out.panels = {c, c};
  }
  return ScalarField(std::move(out));
}

StieltjesForm dirichlet_u1(double T) { return StieltjesForm::jump_only(T, Spinor(1.0, 0.0), FormLabel::U1); }

}  // namespace

CounterexamplePair build_example1(const PotentialOmega& half_profile, double floor, Tolerances tol) {
  const double L = 0.5 * kPi;
  if (std::abs(half_profile.T() - L) > 1e-12) throw DomainError("the half profile must live on (0, pi/2)");
  const PotentialOmega omega(kPi, periodic_extension(half_profile.p(), L), periodic_extension(half_profile.q(), L));
  const PotentialOmega reflected = omega.reflect();
  const double asym = omega.sup_distance(reflected);
  if (asym < floor) {
    std::ostringstream msg;
    msg << "potential is reflection symmetric to within " << asym << " (floor " << floor << "); the pair is trivial";
    throw DegenerateScenarioError(msg.str());
  }
  const auto u2 = StieltjesForm::point(kPi, L, Spinor(1.0, 0.0), FormLabel::U2);
  CounterexamplePair pair{Scenario::Example1, DiracProblem(omega, dirichlet_u1(kPi), u2, tol),
                          DiracProblem(reflected, dirichlet_u1(kPi), u2, tol), 0.0, 0.0, asym};
  return pair;
}

CounterexamplePair build_example2(const PotentialOmega& bump, double alpha, double alpha0, double floor,
                                  Tolerances tol) {
  if (!(alpha > 0.0 && alpha < alpha0 && alpha0 < 0.5 * kPi)) throw DomainError("need 0 < alpha < alpha0 < pi/2");
  if (std::abs(bump.T() - kPi) > 1e-12) throw DomainError("the bump must live on (0, pi)");
  constexpr int n = 400;
  for (int k = 0; k <= n; ++k) {
    const double s = alpha0 * k / n;
    for (double x : {s, kPi - s}) {
      if (std::abs(bump.p(x)) + std::abs(bump.q(x)) > 1e-14) {
        std::ostringstream msg;
        msg << "bump does not vanish at x = " << x << " (must be zero on [0, alpha0] and [pi - alpha0, pi])";
        throw DomainError(msg.str());
      }
    }
  }
  const PotentialOmega reflected = bump.reflect();
  const double asym = bump.sup_distance(reflected);
  if (asym < floor) {
    std::ostringstream msg;
    msg << "bump is reflection symmetric to within " << asym << " (floor " << floor << "); the pair is trivial";
    throw DegenerateScenarioError(msg.str());
  }
  const auto u2 = StieltjesForm::point(kPi, kPi - alpha, Spinor(1.0, 0.0), FormLabel::U2);
  return {Scenario::Example2, DiracProblem(bump, dirichlet_u1(kPi), u2, tol),
          DiracProblem(reflected, dirichlet_u1(kPi), u2, tol), alpha, alpha0, asym};
}

PotentialOmega default_example2_bump() {
  return {kPi, ScalarField::hat(1.2, 0.6, 0.5, 0.0, kPi), ScalarField::zero()};
}

PotentialOmega default_example1_profile() {
  const double L = 0.5 * kPi;
  return PotentialOmega::chebyshev(L, {0.2, 0.2}, {0.0});
}

std::vector<Complex> counterexample_samples(int n, std::uint64_t seed, double re_max) {
  if (n < 0) throw DomainError("sample count must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-re_max, re_max), im(0.3, 1.0);
  std::bernoulli_distribution lower(0.5);
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) {
    const double x = re(rng);
    const double y = im(rng);
    out.emplace_back(x, lower(rng) ? -y : y);
  }
  return out;
}

ComplexWindow default_window(Scenario s) {
  return s == Scenario::Example1 ? ComplexWindow(-10.5, 10.5, -1.0, 1.0) : ComplexWindow(-40.0, 40.0, -1.0, 1.0);
}

bool PairReport::reproduces() const {
  if (!is_counterexample) return false;
  if (scenario == Scenario::Example1)
    return max_omega_difference <= tol && !condition_S && xi_equals_lambda2;
  return condition_S && lambda2_grid_complete && lambda2_grid_error <= 10.0 * tol;
}

namespace {

// Largest distance from a point of one set to the other set, both ways.
double hausdorff(const std::vector<Eigenvalue>& A, const std::vector<Eigenvalue>& B) {
  double d = 0.0;
  for (const auto& a : A) d = std::max(d, min_distance({a}, B));
  for (const auto& b : B) d = std::max(d, min_distance({b}, A));
  return d;
}

}  // namespace

PairReport verify_pair(const CounterexamplePair& pair, const std::vector<Complex>& samples, const ComplexWindow& w,
                       double tol) {
  PairReport rep;
  rep.scenario = pair.scenario;
  rep.samples = static_cast<int>(samples.size());
  rep.tol = tol;
  rep.potential_distance = pair.P.omega().sup_distance(pair.P_tilde.omega());

  const CharacteristicEvaluator ev(pair.P), ev_t(pair.P_tilde);
  const double T = pair.P.T();
  const double guard = pair.P.tolerances().pole_guard;
  struct Diff {
    double M = 0, omega = 0, d1 = 0, d2 = 0;
    bool excluded = false;
  };
  std::vector<Diff> diffs(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    const Complex z = samples[k];
    const FormRows a = ev.rows(z), b = ev_t.rows(z);
    Diff& d = diffs[k];
    d.omega = std::abs(char_from_rows(a, CharKind::Omega) - char_from_rows(b, CharKind::Omega));
    const Complex a1 = char_from_rows(a, CharKind::Delta1), b1 = char_from_rows(b, CharKind::Delta1);
    const Complex a2 = char_from_rows(a, CharKind::Delta2), b2 = char_from_rows(b, CharKind::Delta2);
    d.d1 = std::abs(a1 - b1);
    d.d2 = std::abs(a2 - b2);
    if (near_pole(a1, z, T, guard) || near_pole(b1, z, T, guard)) {
      d.excluded = true;
      return;
    }
    d.M = std::abs(a2 * (1.0 / a1) - b2 * (1.0 / b1));
  });
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    const auto& d = diffs[k];
    rep.max_omega_difference = std::max(rep.max_omega_difference, d.omega);
    rep.max_delta1_difference = std::max(rep.max_delta1_difference, d.d1);
    rep.max_delta2_difference = std::max(rep.max_delta2_difference, d.d2);
    if (d.excluded) {
      ++rep.excluded;
      std::ostringstream msg;
      msg << "sample " << samples[k] << " is within the pole guard of Delta1; M not compared";
      rep.notes.push_back(msg.str());
    } else {
      rep.max_M_difference = std::max(rep.max_M_difference, d.M);
    }
  }

  const ConditionSResult s = check_condition_S(ev, w, tol);
  rep.condition_S = s.holds;
  rep.condition_S_distance = s.min_distance;
  rep.lambda1_count = s.lambda1.total_multiplicity();
  rep.xi_count = s.xi.total_multiplicity();
  const SpectrumResult l2 = spectrum(ev, ProblemTag::L2, w);
  rep.lambda2_count = l2.total_multiplicity();

  if (pair.scenario == Scenario::Example1) {
    rep.xi_lambda2_distance = hausdorff(s.xi.eigenvalues, l2.eigenvalues);
    rep.xi_equals_lambda2 = rep.xi_count == rep.lambda2_count && rep.xi_lambda2_distance <= tol;
  } else {
    const double step = kPi / pair.alpha;
    int expected = 0;
    for (int n = static_cast<int>(std::ceil(w.re_min / step)); n * step <= w.re_max; ++n)
      if (w.contains(Complex(n * step, 0.0))) ++expected;
    for (const auto& e : l2.eigenvalues) {
      const double n = std::round(e.lambda.real() / step);
      rep.lambda2_grid_error = std::max(rep.lambda2_grid_error, std::abs(e.lambda - Complex(n * step, 0.0)));
    }
    rep.lambda2_grid_complete = rep.lambda2_count == expected;
    if (!rep.lambda2_grid_complete) {
      std::ostringstream msg;
      msg << "expected " << expected << " multiples of pi/alpha in the window, found " << rep.lambda2_count;
      rep.notes.push_back(msg.str());
    }
    rep.lambda1_lambda2_margin = min_distance(s.lambda1.eigenvalues, l2.eigenvalues);
  }

  rep.is_counterexample = rep.potential_distance >= kAsymmetryFloor && rep.max_M_difference <= tol;
  if (rep.potential_distance < kAsymmetryFloor) rep.notes.push_back("not a counterexample: the potentials coincide");
  else if (rep.max_M_difference > tol) rep.notes.push_back("not a counterexample: the Weyl-type functions differ");
  return rep;
}

}  // namespace ndirac
