#include "ndirac/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ndirac/parallel.hpp"

namespace ndirac {

PotentialParam::PotentialParam(double T_, int degree_, Eigen::VectorXd c_) : T(T_), degree(degree_), c(std::move(c_)) {
  if (!(T > 0.0)) throw DomainError("parametrization needs T > 0");
  if (degree < 0) throw DomainError("parametrization degree must be >= 0");
  if (c.size() != 2 * (degree + 1)) {
    std::ostringstream msg;
    msg << "expected " << 2 * (degree + 1) << " coefficients for degree " << degree << ", got " << c.size();
    throw DomainError(msg.str());
  }
  if (!c.allFinite()) throw DomainError("potential coefficients must be finite");
}

PotentialParam PotentialParam::zero(double T, int degree) {
  return {T, degree, Eigen::VectorXd::Zero(2 * (degree + 1))};
}

PotentialParam PotentialParam::from_potential(const PotentialOmega& omega, int degree) {
  const double T = omega.T();
  Eigen::VectorXd c(2 * (degree + 1));
  const auto p = omega.p().to_chebyshev(0.0, T, degree);
  const auto q = omega.q().to_chebyshev(0.0, T, degree);
  for (int k = 0; k <= degree; ++k) {
    c(k) = k < static_cast<int>(p.size()) ? p[k].real() : 0.0;
    c(degree + 1 + k) = k < static_cast<int>(q.size()) ? q[k].real() : 0.0;
  }
  return {T, degree, c};
}

std::vector<double> PotentialParam::p_coeffs() const { return {c.data(), c.data() + degree + 1}; }

std::vector<double> PotentialParam::q_coeffs() const {
  return {c.data() + degree + 1, c.data() + 2 * (degree + 1)};
}

PotentialOmega PotentialParam::to_potential() const { return PotentialOmega::chebyshev(T, p_coeffs(), q_coeffs()); }

// ---------------------------------------------------------------------------

std::string SpectralData::tag() const {
  if (std::holds_alternative<TwoSpectra>(data)) return "two_spectra";
  if (std::holds_alternative<WeylData>(data)) return "weyl";
  return "three_spectra";
}

namespace {

constexpr double kDisjoint = 1e-8;

double list_distance(const std::vector<Complex>& A, const std::vector<Complex>& B) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : A)
    for (const auto& b : B) best = std::min(best, std::abs(a - b));
  return best;
}

void require_finite(const std::vector<Complex>& v, const char* what) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError(std::string("non-finite entry in ") + what);
}

}  // namespace

void SpectralData::validate() const {
  if (const auto* d = std::get_if<TwoSpectra>(&data)) {
    require_finite(d->lambda1, "lambda1");
    require_finite(d->lambda11, "lambda11");
    if (list_distance(d->lambda1, d->lambda11) <= kDisjoint)
      throw DomainError("Lambda1 and Lambda11 must be disjoint");
  } else if (const auto* d = std::get_if<WeylData>(&data)) {
    require_finite(d->mu, "mu");
    require_finite(d->M, "M");
    require_finite(d->xi, "xi");
    if (d->mu.size() != d->M.size()) throw DomainError("WeylData needs one M value per sample point");
  } else {
    const auto& t = std::get<ThreeSpectra>(data);
    require_finite(t.l0, "l0");
    require_finite(t.l1, "l1");
    require_finite(t.l2, "l2");
    if (!(t.a > 0.0)) throw DomainError("ThreeSpectra needs an interior point a > 0");
    if (std::abs(t.h1(0)) + std::abs(t.h1(1)) == 0.0 || std::abs(t.h0(0)) + std::abs(t.h0(1)) == 0.0)
      throw DomainError("ThreeSpectra jump pairs must be nonzero");
    if (list_distance(t.l0, t.l1) <= kDisjoint) throw DomainError("condition S' fails: Lambda0' meets Lambda1'");
  }
}

SpectralData make_two_spectra(const DiracProblem& P, const ComplexWindow& w, double tol) {
  const CharacteristicEvaluator ev(P);
  TwoSpectra d;
  d.lambda1 = spectrum(ev, ProblemTag::L1, w, tol).points();
  d.lambda11 = spectrum(ev, ProblemTag::L11, w, tol).points();
  return {d, w};
}

SpectralData make_weyl_data(const DiracProblem& P, const std::vector<Complex>& mu, const ComplexWindow& w,
                            double tol) {
  const CharacteristicEvaluator ev(P);
  WeylData d;
  d.mu = mu;
  d.M.resize(mu.size());
  parallel_for(mu.size(), [&](std::size_t k) {
    const Complex d1 = ev(CharKind::Delta1, mu[k]);
    check_pole(d1, mu[k], P.T(), P.tolerances().pole_guard, "Delta1");
    d.M[k] = ev(CharKind::Delta2, mu[k]) * (1.0 / d1);
  });
  d.xi = spectrum(ev, ProblemTag::L0, w, tol).points();
  return {d, w};
}

SpectralData make_three_spectra(const PotentialOmega& omega, const Spinor& h1, const Spinor& h0, double a,
                                const ComplexWindow& w, double tol, Tolerances integration) {
  const CharacteristicEvaluator ev(two_point_problem(omega, h1, h0, a, integration));
  ThreeSpectra d;
  d.l0 = spectrum(ev, ProblemTag::L0p, w, tol).points();
  d.l1 = spectrum(ev, ProblemTag::L1p, w, tol).points();
  d.l2 = spectrum(ev, ProblemTag::L2p, w, tol).points();
  d.a = a;
  d.h1 = h1;
  d.h0 = h0;
  return {d, w};
}

// ---------------------------------------------------------------------------

DiracProblem problem_for(const SpectralData& data, const PotentialParam& c, const DiracProblem& forms) {
  if (std::abs(c.T - forms.T()) > 1e-12 * forms.T())
    throw DomainError("parametrization and problem template disagree on T");
  if (const auto* t = std::get_if<ThreeSpectra>(&data.data))
    return two_point_problem(c.to_potential(), t->h1, t->h0, t->a, forms.tolerances());
  return forms.with_potential(c.to_potential());
}

namespace {

// One residual entry: a characteristic value at a target zero, or an M mismatch.
struct Probe {
  Complex lambda;
  CharKind kind = CharKind::Delta1;
  bool weyl = false;
  Complex target;
};

std::vector<Probe> probes_for(const SpectralData& data) {
  std::vector<Probe> out;
  auto add = [&out](const std::vector<Complex>& zs, CharKind kind) {
    for (const auto& z : zs) out.push_back({z, kind, false, {}});
  };
  if (const auto* d = std::get_if<TwoSpectra>(&data.data)) {
    add(d->lambda1, CharKind::Delta1);
    add(d->lambda11, CharKind::Delta11);
  } else if (const auto* d = std::get_if<WeylData>(&data.data)) {
    for (std::size_t k = 0; k < d->mu.size(); ++k) out.push_back({d->mu[k], CharKind::Delta1, true, d->M[k]});
    add(d->xi, CharKind::Omega);
  } else {
    const auto& t = std::get<ThreeSpectra>(data.data);
    add(t.l0, CharKind::Omega);
    add(t.l1, CharKind::Delta1);
    add(t.l2, CharKind::Delta2);
  }
  return out;
}

struct Entry {
  Complex value;
  bool excluded = false;
};

Entry eval_probe(const DiracProblem& P, const Probe& pr) {
  const FormRows rows = form_rows(P, problem_X(P, pr.lambda));
  if (pr.weyl) {
    const Complex d1 = char_from_rows(rows, CharKind::Delta1);
    if (near_pole(d1, pr.lambda, P.T(), P.tolerances().pole_guard)) return {0.0, true};
    return {char_from_rows(rows, CharKind::Delta2) * (1.0 / d1) - pr.target, false};
  }
  return {char_from_rows(rows, pr.kind) * (1.0 / growth_scale(pr.lambda, P.T())), false};
}

std::vector<Entry> eval_entries(const DiracProblem& P, const std::vector<Probe>& probes) {
  std::vector<Entry> out(probes.size());
  parallel_for(probes.size(), [&](std::size_t k) { out[k] = eval_probe(P, probes[k]); });
  return out;
}

Eigen::VectorXd split(const std::vector<Complex>& r) {
  Eigen::VectorXd v(2 * r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    v(2 * k) = r[k].real();
    v(2 * k + 1) = r[k].imag();
  }
  return v;
}

}  // namespace

MisfitResult misfit(const SpectralData& data, const PotentialParam& c, const DiracProblem& forms) {
  data.validate();
  const DiracProblem P = problem_for(data, c, forms);
  const auto probes = probes_for(data);
  const auto entries = eval_entries(P, probes);
  MisfitResult out;
  out.residuals.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].excluded) {
      std::ostringstream msg;
      msg << "sample mu = " << probes[k].lambda << " is within the pole guard of Delta1; excluded";
      out.notices.push_back(msg.str());
    }
    out.residuals.push_back(entries[k].value);
    out.value += std::norm(entries[k].value);
  }
  return out;
}

Eigen::MatrixXd residual_jacobian(const SpectralData& data, const PotentialParam& c, const DiracProblem& forms,
                                  double step, bool central) {
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  const auto probes = probes_for(data);
  const std::size_t n = static_cast<std::size_t>(c.size()), m = probes.size();
  std::vector<DiracProblem> plus, minus;
  std::vector<double> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    h[j] = step * std::max(1.0, std::abs(c.c(j)));
    PotentialParam cp = c;
    cp.c(j) += h[j];
    plus.push_back(problem_for(data, cp, forms));
    PotentialParam cm = c;
    if (central) cm.c(j) -= h[j];
    minus.push_back(problem_for(data, cm, forms));
  }
  // Base values are shared by every forward-difference column.
  std::vector<Entry> base;
  if (!central) base = eval_entries(minus.front(), probes);
  std::vector<Complex> col(n * m);
  parallel_for(n * m, [&](std::size_t idx) {
    const std::size_t j = idx / m, k = idx % m;
    const Complex fp = eval_probe(plus[j], probes[k]).value;
    const Complex fm = central ? eval_probe(minus[j], probes[k]).value : base[k].value;
    col[idx] = (fp - fm) / (central ? 2.0 * h[j] : h[j]);
  });
  Eigen::MatrixXd J(2 * m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      J(2 * k, j) = col[j * m + k].real();
      J(2 * k + 1, j) = col[j * m + k].imag();
    }
  return J;
}

InversionResult invert(const SpectralData& data, const PotentialParam& c0, const DiracProblem& forms,
                       const InversionOptions& opt) {
  if (opt.max_iter < 0) throw DomainError("max_iter must be >= 0");
  data.validate();
  InversionResult res{c0, 0.0, {}, 0, false, "", {}};
  MisfitResult cur = misfit(data, c0, forms);
  if (!std::isfinite(cur.value)) throw DomainError("misfit is not finite at the starting point");
  auto objective = [&opt](const MisfitResult& m, const PotentialParam& c) {
    return m.value + opt.ridge * c.c.squaredNorm();
  };
  PotentialParam c = c0;
  double obj = objective(cur, c);
  res.trace.push_back(cur.value);
  double damping = opt.initial_damping;
  const int n = c.size();

  for (;;) {
    if (cur.value <= opt.target) {
      res.converged = true;
      res.stop_reason = "misfit below target";
      break;
    }
    if (res.iterations >= opt.max_iter) {
      res.stop_reason = "iteration limit reached";
      break;
    }
    ++res.iterations;
    const Eigen::MatrixXd J = residual_jacobian(data, c, forms, opt.fd_step);
    const Eigen::VectorXd r = split(cur.residuals);
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += opt.ridge;
    const Eigen::VectorXd g = J.transpose() * r + opt.ridge * c.c;
    const double diag_floor = 1e-12 * std::max(1.0, A.diagonal().maxCoeff());

    bool accepted = false;
    bool small_step = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd Ad = A;
      for (int j = 0; j < n; ++j) Ad(j, j) += damping * std::max(A(j, j), diag_floor);
      const Eigen::VectorXd delta = Ad.ldlt().solve(-g);
      if (delta.norm() <= opt.step_tol * (c.c.norm() + opt.step_tol)) {
        small_step = true;
        break;
      }
      PotentialParam trial(c.T, c.degree, c.c + delta);
      MisfitResult m = misfit(data, trial, forms);
      const double trial_obj = objective(m, trial);
      if (std::isfinite(trial_obj) && trial_obj < obj && m.value <= cur.value) {
        c = trial;
        cur = std::move(m);
        obj = trial_obj;
        res.trace.push_back(cur.value);
        damping = std::max(damping / 3.0, 1e-12);
        accepted = true;
        small_step = delta.norm() <= opt.step_tol * (c.c.norm() + opt.step_tol);
        break;
      }
      damping *= 4.0;
    }
    if (small_step) {
      res.converged = true;
      res.stop_reason = "relative step below tolerance";
      break;
    }
    if (!accepted) {
      res.stop_reason = "no decrease found";
      break;
    }
  }
  res.c = c;
  res.misfit = cur.value;
  res.residuals = cur.residuals;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

ProblemTag tag_for(CharKind kind) {
  switch (kind) {
    case CharKind::Omega: return ProblemTag::L0;
    case CharKind::Delta1: return ProblemTag::L1;
    case CharKind::Delta2: return ProblemTag::L2;
    case CharKind::Delta11: return ProblemTag::L11;
  }
  throw UnsupportedKindError("unknown characteristic kind");
}

}  // namespace

Complex reconstruct_char_from_zeros(const std::vector<Complex>& zeros, const std::vector<Complex>& reference_zeros,
                                    const DiracProblem& reference, CharKind kind, Complex lambda) {
  if (zeros.size() != reference_zeros.size()) {
    std::ostringstream msg;
    msg << "zero list has " << zeros.size() << " entries but the reference has " << reference_zeros.size()
        << " in the same window";
    throw DomainError(msg.str());
  }
  const auto z = sorted(zeros);
  const auto zr = sorted(reference_zeros);
  const double eps = 1e-9 * (1.0 + std::abs(lambda));
  int collisions = 0;
  for (const auto& r : zr)
    if (std::abs(r - lambda) <= eps) ++collisions;
  if (collisions > 1) throw DomainError("lambda sits on a multiple reference zero");

  Complex value = collisions == 0 ? char_eval(reference, kind, lambda) : -char_derivative(reference, kind, lambda);
  for (std::size_t n = 0; n < z.size(); ++n) {
    if (std::abs(zr[n] - lambda) <= eps)
      value *= (z[n] - lambda);
    else
      value *= (z[n] - lambda) / (zr[n] - lambda);
  }
  return value;
}

Complex reconstruct_char_from_spectrum(const std::vector<Complex>& zeros, const DiracProblem& reference,
                                       CharKind kind, Complex lambda, const ComplexWindow& w) {
  const auto ref = spectrum(reference, tag_for(kind), w).points();
  return reconstruct_char_from_zeros(zeros, ref, reference, kind, lambda);
}

// ---------------------------------------------------------------------------

Complex truncated_delta(const DiracProblem& P, CharKind kind, double a, Complex lambda) {
  if (kind != CharKind::Delta1 && kind != CharKind::Delta11)
    throw UnsupportedKindError("truncated characteristic functions exist for Delta1 and Delta11 only");
  const auto Z = problem_Z(P, lambda);
  const Row2 row = apply_form(P.U1().truncate(a), *Z.trajectory());
  return kind == CharKind::Delta1 ? -row(1) : row(0);
}

double HalvingReport::max_telescoping_residual() const {
  double m = 0.0;
  for (const auto& l : levels) m = std::max({m, l.telescoping_residual, l.telescoping_residual_other});
  return m;
}

namespace {

bool same_measure(const StieltjesForm& a, const StieltjesForm& b) {
  if (a.T() != b.T() || a.jump() != b.jump() || a.atoms().size() != b.atoms().size()) return false;
  for (std::size_t k = 0; k < a.atoms().size(); ++k)
    if (a.atoms()[k].t != b.atoms()[k].t || a.atoms()[k].w != b.atoms()[k].w) return false;
  if (a.density().has_value() != b.density().has_value()) return false;
  if (a.density()) {
    const auto& da = *a.density();
    const auto& db = *b.density();
    if (da.lo != db.lo || da.hi != db.hi) return false;
    for (int k = 0; k <= 16; ++k) {
      const double t = da.lo + (da.hi - da.lo) * k / 16.0;
      if (std::abs(da.d1(t) - db.d1(t)) + std::abs(da.d2(t) - db.d2(t)) > 1e-14) return false;
    }
  }
  return true;
}

// Delta1^a, Delta11^a for a in {T, T/2, T/4, T/8} and the (a/2, a] integrals, at one lambda.
struct HalvingValues {
  Complex d1[4], d11[4];
  Row2 slab[3];
};

HalvingValues halving_values(const DiracProblem& P, Complex lambda) {
  const auto Z = problem_Z(P, lambda);
  const auto& traj = *Z.trajectory();
  HalvingValues v;
  double a = P.T();
  for (int l = 0; l < 4; ++l, a *= 0.5) {
    const Row2 row = apply_form(P.U1().truncate(a), traj);
    v.d1[l] = -row(1);
    v.d11[l] = row(0);
    if (l < 3) v.slab[l] = apply_form(P.U1().restrict_to(0.5 * a, a), traj);
  }
  return v;
}

}  // namespace

HalvingReport halving_check(const DiracProblem& P, const DiracProblem& other, const std::vector<Complex>& lambdas,
                            double tol) {
  if (std::abs(P.T() - other.T()) > 1e-12 * P.T()) throw DomainError("halving check needs equal interval lengths");
  if (!same_measure(P.U1(), other.U1())) throw DomainError("halving check needs both problems to share U1");
  std::vector<HalvingValues> a(lambdas.size()), b(lambdas.size());
  parallel_for(2 * lambdas.size(), [&](std::size_t idx) {
    const std::size_t k = idx / 2;
    if (idx % 2 == 0)
      a[k] = halving_values(P, lambdas[k]);
    else
      b[k] = halving_values(other, lambdas[k]);
  });
  HalvingReport rep;
  rep.tol = tol;
  double level_a = P.T();
  for (int l = 0; l < 3; ++l, level_a *= 0.5) {
    HalvingLevel lev;
    lev.a = level_a;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const double s = 1.0 / growth_scale(lambdas[k], P.T());
      auto telescoping = [&](const HalvingValues& v) {
        const double r1 = std::abs(v.d1[l + 1] - (v.d1[l] + v.slab[l](1)));
        const double r11 = std::abs(v.d11[l + 1] - (v.d11[l] - v.slab[l](0)));
        return std::max(r1, r11) * s;
      };
      lev.telescoping_residual = std::max(lev.telescoping_residual, telescoping(a[k]));
      lev.telescoping_residual_other = std::max(lev.telescoping_residual_other, telescoping(b[k]));
      lev.delta1_difference = std::max(lev.delta1_difference, std::abs(a[k].d1[l] - b[k].d1[l]) * s);
      lev.delta11_difference = std::max(lev.delta11_difference, std::abs(a[k].d11[l] - b[k].d11[l]) * s);
    }
    rep.levels.push_back(lev);
  }
  rep.telescoping_ok = rep.max_telescoping_residual() <= tol;
  return rep;
}

}  // namespace ndirac
