#include "ndirac/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ndirac/parallel.hpp"

namespace ndirac {

SectorRay::SectorRay(double delta_, double arg_, std::vector<double> radii_)
    : delta(delta_), arg(arg_), radii(std::move(radii_)) {
  if (!(delta > 0.0 && delta < kPi / 2)) throw DomainError("sector delta must lie in (0, pi/2)");
  if (!(arg >= delta && arg <= kPi - delta)) throw DomainError("ray argument must lie in [delta, pi - delta]");
  if (radii.empty()) throw DomainError("ray needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw DomainError("ray radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("ray radii must be strictly increasing");
  }
}

void summarize_decay(AsymptoticReport& rep, double floor) {
  rep.monotone_decay = true;
  for (std::size_t i = 1; i < rep.errors.size(); ++i) {
    const double lim = std::max(floor, i < rep.floors.size() ? rep.floors[i] : 0.0);
    if (!(rep.errors[i] < rep.errors[i - 1] || rep.errors[i] <= lim)) rep.monotone_decay = false;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < rep.errors.size(); ++i) {
    const double lim = std::max(floor, i < rep.floors.size() ? 10.0 * rep.floors[i] : 0.0);
    if (!(rep.errors[i] > lim)) continue;
    const double lx = std::log(rep.radii[i]), ly = std::log(rep.errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  rep.decay_exponent = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
}

namespace {

/// Global integration error grows roughly with the number of oscillations crossed.
double integration_floor(double tol, double r, double T) { return 10.0 * tol * (1.0 + r * T); }

void check_radii(const SectorRay& ray) {
  if (ray.radii.back() > kMaxValidatedRadius) {
    std::ostringstream msg;
    msg << "radius " << ray.radii.back() << " beyond the validated range " << kMaxValidatedRadius;
    throw DomainError(msg.str());
  }
}

Complex leading_coefficient(const DiracProblem& P) {
  const Spinor& h = P.U1().jump();
  const Complex c = h(0) - Complex(0, 1) * h(1);
  if (std::abs(c) <= 1e-12) throw UnsupportedAsymptoteError("h11 - i h12 vanishes: the leading term is degenerate");
  return c;
}

double rel(const Spinor& a, const Spinor& lead) { return (a - lead).norm() / lead.norm(); }

const Complex I(0.0, 1.0);
const Spinor kDir(1.0, -I);

}  // namespace

AsymptoticReport check_Xk_asymptotics(const PotentialOmega& omega, const SectorRay& ray, double tol) {
  check_radii(ray);
  AsymptoticReport rep;
  rep.formula = "X_k";
  rep.radii = ray.radii;
  rep.errors.assign(ray.radii.size(), 0.0);
  const double T = omega.T();
  for (double r : ray.radii) rep.floors.push_back(integration_floor(tol, r, T));
  parallel_for(ray.radii.size(), [&](std::size_t i) {
    const Complex l = ray.point(ray.radii[i]);
    const auto X = fundamental_X(omega, l, tol);
    double worst = 0.0;
    for (double x : {T / 2, T}) {
      const Mat2 v = X(x);
      const Spinor l1(std::cos(l * x), std::sin(l * x));
      const Spinor l2(-std::sin(l * x), std::cos(l * x));
      worst = std::max({worst, rel(v.col(0), l1), rel(v.col(1), l2)});
    }
    rep.errors[i] = worst;
  });
  summarize_decay(rep);
  return rep;
}

AsymptoticReport check_char_asymptotics(const DiracProblem& P, const SectorRay& ray, CharKind kind) {
  if (kind != CharKind::Delta1 && kind != CharKind::Delta11)
    throw UnsupportedKindError("asymptotics are available for Delta1 and Delta11 only");
  check_radii(ray);
  const Complex c = leading_coefficient(P);
  AsymptoticReport rep;
  rep.formula = to_string(kind);
  rep.radii = ray.radii;
  rep.errors.assign(ray.radii.size(), 0.0);
  const double T = P.T();
  for (double r : ray.radii) rep.floors.push_back(integration_floor(P.tolerances().ode, r, T));
  parallel_for(ray.radii.size(), [&](std::size_t i) {
    const Complex l = ray.point(ray.radii[i]);
    // Backward solutions carry the dominant exp(-i l (T - t)) growth without cancellation.
    const Complex value = char_eval_via_Z(P, kind, l);
    const Complex lead = (kind == CharKind::Delta1 ? c / (2.0 * I) : c / 2.0) * std::exp(-I * l * T);
    rep.errors[i] = std::abs(value / lead - 1.0);
  });
  summarize_decay(rep);
  return rep;
}

std::vector<AsymptoticReport> check_weyl_solution_asymptotics(const DiracProblem& P, const SectorRay& ray, double x) {
  const double T = P.T();
  if (!(x >= T / 4 && x <= 3 * T / 4)) throw DomainError("x must lie in [T/4, 3T/4]");
  check_radii(ray);
  const Complex c = leading_coefficient(P);
  std::vector<AsymptoticReport> reps(3);
  const char* names[] = {"Phi", "psi", "v1"};
  for (int k = 0; k < 3; ++k) {
    reps[static_cast<std::size_t>(k)].formula = names[k];
    reps[static_cast<std::size_t>(k)].radii = ray.radii;
    reps[static_cast<std::size_t>(k)].errors.assign(ray.radii.size(), 0.0);
    for (double r : ray.radii) reps[static_cast<std::size_t>(k)].floors.push_back(integration_floor(P.tolerances().ode, r, T));
  }
  const double guard = P.tolerances().pole_guard;
  parallel_for(ray.radii.size(), [&](std::size_t i) {
    const Complex l = ray.point(ray.radii[i]);
    const auto Z = problem_Z(P, l);
    const Row2 u = apply_form(P.U1(), *Z.trajectory());
    const Complex d1 = -u(1);
    check_pole(d1, l, T, guard, "Delta1");
    const Spinor z1 = Z(x).col(0), z2 = Z(x).col(1);
    const Spinor psi = -z2;
    const Spinor Phi = psi * (1.0 / d1);
    const Complex back = std::exp(-I * l * (T - x));
    reps[0].errors[i] = rel(Phi, std::exp(I * l * x) * (1.0 / c) * kDir);
    reps[1].errors[i] = rel(psi, back / (2.0 * I) * kDir);
    reps[2].errors[i] = rel(z1, 0.5 * back * kDir);
  });
  for (auto& r : reps) summarize_decay(r);
  return reps;
}

std::vector<AsymptoticReport> check_truncated_asymptotics(const DiracProblem& P, const SectorRay& ray, double x) {
  const double T = P.T();
  double a = 0.0;
  for (const auto& atom : P.U1().atoms()) a = std::max(a, atom.t);
  if (P.U1().density()) a = std::max(a, P.U1().density()->hi);
  if (!(a < T)) throw UnsupportedAsymptoteError("U1 charges the whole interval; truncated asymptotics do not apply");
  if (!(x > a / 2 && x <= T)) throw DomainError("x must lie in (a/2, T]");
  check_radii(ray);
  const Complex c = leading_coefficient(P);
  const double eps = std::max(P.tolerances().ode, 1e-16);
  std::vector<AsymptoticReport> reps(2);
  reps[0].formula = "phi_truncated";
  reps[1].formula = "v2_truncated";
  for (auto& r : reps) {
    r.radii = ray.radii;
    r.errors.assign(ray.radii.size(), 0.0);
    r.floors.assign(ray.radii.size(), 0.0);
  }
  const double guard = P.tolerances().pole_guard;
  parallel_for(ray.radii.size(), [&](std::size_t i) {
    const Complex l = ray.point(ray.radii[i]);
    const auto X = problem_X(P, l);
    const Row2 ux = apply_form(P.U1(), *X.trajectory());
    const Spinor cphi(-ux(1), ux(0));
    const Spinor phi = X(x) * cphi;
    const Spinor lead_phi = c / (2.0 * I) * std::exp(-I * l * x) * Spinor(1.0, I);
    reps[0].errors[i] = rel(phi, lead_phi);
    reps[0].floors[i] = eps * cphi.norm() * X(x).norm() / lead_phi.norm() + integration_floor(eps, ray.radii[i], T);

    const auto Z = problem_Z(P, l);
    const Row2 uz = apply_form(P.U1(), *Z.trajectory());
    check_pole(uz(0), l, T, guard, "Delta11");
    const Complex N = -uz(1) / uz(0);
    const Spinor v2 = Z(x).col(1) + N * Z(x).col(0);
    const Spinor lead_v2 = std::exp(I * l * (T - x)) * Spinor(-I, 1.0);
    reps[1].errors[i] = rel(v2, lead_v2);
    reps[1].floors[i] = eps * (1.0 + std::abs(N)) * Z(x).norm() / lead_v2.norm() + integration_floor(eps, ray.radii[i], T);
  });
  for (auto& r : reps) {
    for (std::size_t i = 0; i < r.radii.size(); ++i)
      if (r.floors[i] > 1e-3) {
        std::ostringstream msg;
        msg << "r = " << r.radii[i] << ": roundoff floor " << r.floors[i] << " swamps the comparison";
        r.notes.push_back(msg.str());
      }
    summarize_decay(r);
  }
  return reps;
}

std::string to_string(GrowthQuantity q) {
  switch (q) {
    case GrowthQuantity::v1: return "v1";
    case GrowthQuantity::Phi: return "Phi";
    case GrowthQuantity::phi: return "phi";
    case GrowthQuantity::v2: return "v2";
  }
  return "?";
}

GrowthQuantity growth_quantity_from_string(const std::string& name) {
  if (name == "v1") return GrowthQuantity::v1;
  if (name == "Phi") return GrowthQuantity::Phi;
  if (name == "phi") return GrowthQuantity::phi;
  if (name == "v2") return GrowthQuantity::v2;
  throw UnsupportedKindError("unknown growth quantity '" + name + "'");
}

GrowthReport check_growth_bounds(const DiracProblem& P, GrowthQuantity q, double x,
                                 const std::vector<Complex>& samples, double delta, double bound) {
  const double T = P.T();
  if (!(x > 0.0 && x < T)) throw DomainError("x must lie in (0, T)");
  GrowthReport rep;
  rep.quantity = q;
  rep.x = x;
  rep.bound = bound;

  std::vector<Complex> admissible;
  for (const Complex& l : samples) {
    if (l.imag() < 0.0) {
      rep.filtered.push_back(l);
      std::ostringstream msg;
      msg << "sample " << l << " filtered: Im lambda < 0";
      rep.notes.push_back(msg.str());
    } else {
      admissible.push_back(l);
    }
  }

  // Exclusion disks around the zeros of the relevant denominator.
  if ((q == GrowthQuantity::Phi || q == GrowthQuantity::v2) && !admissible.empty()) {
    double re0 = admissible[0].real(), re1 = re0, im0 = admissible[0].imag(), im1 = im0;
    for (const Complex& l : admissible) {
      re0 = std::min(re0, l.real());
      re1 = std::max(re1, l.real());
      im0 = std::min(im0, l.imag());
      im1 = std::max(im1, l.imag());
    }
    const double pad = delta + 0.05;
    const ComplexWindow w(re0 - pad, re1 + pad, im0 - pad, im1 + pad);
    const auto zeros = spectrum(P, q == GrowthQuantity::Phi ? ProblemTag::L1 : ProblemTag::L11, w);
    std::vector<Complex> kept;
    for (const Complex& l : admissible) {
      bool near = false;
      for (const auto& e : zeros.eigenvalues) near = near || std::abs(l - e.lambda) < delta;
      if (near) {
        rep.filtered.push_back(l);
        std::ostringstream msg;
        msg << "sample " << l << " filtered: within " << delta << " of a "
            << (q == GrowthQuantity::Phi ? "Lambda1" : "Lambda11") << " zero";
        rep.notes.push_back(msg.str());
      } else {
        kept.push_back(l);
      }
    }
    admissible = std::move(kept);
  }
  if (q == GrowthQuantity::phi || q == GrowthQuantity::v2) {
    double a = 0.0;
    for (const auto& atom : P.U1().atoms()) a = std::max(a, atom.t);
    if (P.U1().density()) a = std::max(a, P.U1().density()->hi);
    if (!(a < T && x >= a / 2))
      rep.notes.push_back("estimate is stated for U1 supported on [0, a] with x >= a/2; this problem is outside it");
  }

  rep.samples = admissible;
  rep.ratios.assign(admissible.size(), 0.0);
  parallel_for(admissible.size(), [&](std::size_t i) {
    const Complex l = admissible[i];
    Spinor v;
    double log_ref = 0.0;  // log |exp(exponent)|
    switch (q) {
      case GrowthQuantity::v1: {
        v = problem_Z(P, l)(x).col(0);
        log_ref = (-I * l * (T - x)).real();
        break;
      }
      case GrowthQuantity::Phi: {
        const auto Z = problem_Z(P, l);
        const Row2 u = apply_form(P.U1(), *Z.trajectory());
        v = Z(x).col(1) * (1.0 / u(1));
        log_ref = (I * l * x).real();
        break;
      }
      case GrowthQuantity::phi: {
        const auto X = problem_X(P, l);
        const Row2 u = apply_form(P.U1(), *X.trajectory());
        v = X(x) * Spinor(-u(1), u(0));
        log_ref = (-I * l * x).real();
        break;
      }
      case GrowthQuantity::v2: {
        const auto Z = problem_Z(P, l);
        const Row2 u = apply_form(P.U1(), *Z.trajectory());
        v = Z(x).col(1) - u(1) / u(0) * Z(x).col(0);
        log_ref = (I * l * (T - x)).real();
        break;
      }
    }
    rep.ratios[i] = v.norm() * std::exp(-log_ref);
  });
  rep.max_ratio = rep.ratios.empty() ? 0.0 : *std::max_element(rep.ratios.begin(), rep.ratios.end());
  rep.bounded = rep.max_ratio <= bound;
  return rep;
}

}  // namespace ndirac
