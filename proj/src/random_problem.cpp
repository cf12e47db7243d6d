#include "ndirac/random_problem.hpp"

namespace ndirac {

namespace {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Complex unit_disk(Rng& rng) {
  const double r = std::sqrt(uniform(rng, 0.0, 1.0));
  const double t = uniform(rng, 0.0, 2.0 * kPi);
  return std::polar(r, t);
}

ScalarField random_field(Rng& rng, double T, int degree, double amplitude, bool complex_coeffs) {
  ChebCoeffs<Complex> c(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    const double re = uniform(rng, -amplitude, amplitude);
    const double im = complex_coeffs ? uniform(rng, -amplitude, amplitude) : 0.0;
    c(k) = Complex(re, im);
  }
  return ScalarField::chebyshev(c, 0.0, T);
}

}  // namespace

PotentialOmega random_potential(Rng& rng, double T, int degree, double amplitude, bool complex_coeffs) {
  auto p = random_field(rng, T, degree, amplitude, complex_coeffs);
  auto q = random_field(rng, T, degree, amplitude, complex_coeffs);
  return {T, std::move(p), std::move(q)};
}

StieltjesForm random_form(Rng& rng, double T, int max_atoms, bool density, FormLabel label) {
  Spinor h(unit_disk(rng), unit_disk(rng));
  if (label == FormLabel::U1 && std::abs(h(0)) + std::abs(h(1)) < 0.2) h(0) += 0.5;
  std::vector<FormAtom> atoms;
  const int n = max_atoms > 0 ? std::uniform_int_distribution<int>(0, max_atoms)(rng) : 0;
  for (int i = 0; i < n; ++i) atoms.push_back({uniform(rng, 0.05 * T, T), Spinor(unit_disk(rng), unit_disk(rng)) * 0.5});
  std::optional<FormDensity> dens;
  if (density && uniform(rng, 0.0, 1.0) < 0.5) {
    const double lo = uniform(rng, 0.0, 0.4 * T);
    const double hi = uniform(rng, 0.6 * T, T);
    dens = FormDensity{random_field(rng, T, 3, 0.3, true), random_field(rng, T, 3, 0.3, true), lo, hi};
  }
  return StieltjesForm(T, h, std::move(atoms), std::move(dens), label);
}

DiracProblem random_problem(Rng& rng, const RandomProblemOptions& opt) {
  auto omega = random_potential(rng, opt.T, opt.potential_degree, opt.potential_amplitude, opt.complex_potential);
  auto u1 = random_form(rng, opt.T, opt.max_atoms, opt.densities, FormLabel::U1);
  auto u2 = random_form(rng, opt.T, opt.max_atoms, opt.densities, FormLabel::U2);
  Tolerances tol;
  tol.ode = opt.ode_tol;
  return {std::move(omega), std::move(u1), std::move(u2), tol};
}

DiracProblem random_problem(std::uint64_t seed, const RandomProblemOptions& opt) {
  Rng rng(seed);
  return random_problem(rng, opt);
}

Complex random_lambda(Rng& rng, double re0, double re1, double im0, double im1) {
  return {uniform(rng, re0, re1), uniform(rng, im0, im1)};
}

}  // namespace ndirac
