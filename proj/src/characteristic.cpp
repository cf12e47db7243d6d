#include "ndirac/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ndirac {

namespace {

Complex det2(const Row2& a, const Row2& b) { return a(0) * b(1) - a(1) * b(0); }

template <class R>
Complex ddet2(const R& a, const R& b) {
  return a(2) * b(1) + a(0) * b(3) - a(3) * b(0) - a(1) * b(2);
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

std::string to_string(CharKind kind) {
  switch (kind) {
    case CharKind::Omega: return "omega";
    case CharKind::Delta1: return "Delta1";
    case CharKind::Delta2: return "Delta2";
    case CharKind::Delta11: return "Delta11";
  }
  return "?";
}

CharKind char_kind_from_string(const std::string& name) {
  if (name == "omega" || name == "Omega") return CharKind::Omega;
  if (name == "Delta1" || name == "delta1") return CharKind::Delta1;
  if (name == "Delta2" || name == "delta2") return CharKind::Delta2;
  if (name == "Delta11" || name == "delta11") return CharKind::Delta11;
  throw UnsupportedKindError("unknown characteristic function '" + name + "'");
}

FundamentalMatrix problem_X(const DiracProblem& P, Complex lambda) {
  return fundamental_X(P.omega(), lambda, P.tolerances().ode, P.stop_points());
}

FundamentalMatrix problem_Z(const DiracProblem& P, Complex lambda) {
  return fundamental_Z(P.omega(), lambda, P.tolerances().ode, P.stop_points());
}

FormRows form_rows(const DiracProblem& P, const FundamentalMatrix& Y) {
  const auto& traj = *Y.trajectory();
  const double T = P.T();
  return {apply_form(P.U1(), traj), apply_form(P.U2(), traj), apply_endpoint(EndpointForm(1), traj, T),
          apply_endpoint(EndpointForm(2), traj, T)};
}

FormRowsWithDerivative form_rows_with_derivative(const DiracProblem& P, Complex lambda) {
  const auto W = fundamental_X_with_derivative(P.omega(), lambda, P.tolerances().ode, P.stop_points());
  const double T = P.T();
  return {apply_form(P.U1(), W), apply_form(P.U2(), W), apply_endpoint(EndpointForm(1), W, T),
          apply_endpoint(EndpointForm(2), W, T)};
}

Complex char_from_rows(const FormRows& r, CharKind kind) {
  switch (kind) {
    case CharKind::Omega: return det2(r.U1, r.U2);
    case CharKind::Delta1: return det2(r.U1, r.V1);
    case CharKind::Delta2: return det2(r.U2, r.V1);
    case CharKind::Delta11: return det2(r.U1, r.V2);
  }
  throw UnsupportedKindError("unknown characteristic kind");
}

Complex char_derivative_from_rows(const FormRowsWithDerivative& r, CharKind kind) {
  switch (kind) {
    case CharKind::Omega: return ddet2(r.U1, r.U2);
    case CharKind::Delta1: return ddet2(r.U1, r.V1);
    case CharKind::Delta2: return ddet2(r.U2, r.V1);
    case CharKind::Delta11: return ddet2(r.U1, r.V2);
  }
  throw UnsupportedKindError("unknown characteristic kind");
}

Complex char_eval(const DiracProblem& P, CharKind kind, Complex lambda) {
  return char_from_rows(form_rows(P, problem_X(P, lambda)), kind);
}

Complex char_eval_via_Z(const DiracProblem& P, CharKind kind, Complex lambda) {
  if (kind == CharKind::Omega) throw UnsupportedKindError("omega has no backward-solution formula");
  const auto Z = problem_Z(P, lambda);
  const auto& traj = *Z.trajectory();
  switch (kind) {
    case CharKind::Delta1: return -apply_form(P.U1(), traj)(1);
    case CharKind::Delta2: return -apply_form(P.U2(), traj)(1);
    case CharKind::Delta11: return apply_form(P.U1(), traj)(0);
    default: break;
  }
  throw UnsupportedKindError("unknown characteristic kind");
}

bool near_pole(Complex denominator, Complex lambda, double T, double guard) {
  return !(std::abs(denominator) >= guard * growth_scale(lambda, T));
}

void check_pole(Complex denominator, Complex lambda, double T, double guard, const char* what) {
  if (near_pole(denominator, lambda, T, guard)) {
    std::ostringstream msg;
    msg << what << " is within the pole guard at lambda = " << lambda << " (|" << what
        << "| = " << std::abs(denominator) << ")";
    throw NearPoleError(msg.str(), std::abs(denominator));
  }
}

CombinedSolution aux_solution(const FundamentalMatrix& X, const FormRows& r, AuxKind which) {
  switch (which) {
    case AuxKind::Phi: return X.combination(Spinor(-r.U1(1), r.U1(0)));
    case AuxKind::Theta: return X.combination(Spinor(r.U2(1), -r.U2(0)));
    case AuxKind::Psi: return X.combination(Spinor(r.V1(1), -r.V1(0)));
  }
  throw UnsupportedKindError("unknown auxiliary solution");
}

CombinedSolution aux_solution(const DiracProblem& P, AuxKind which, Complex lambda) {
  const auto X = problem_X(P, lambda);
  return aux_solution(X, form_rows(P, X), which);
}

CombinedSolution weyl_solution_Phi(const DiracProblem& P, Complex lambda) {
  const auto X = problem_X(P, lambda);
  const auto rows = form_rows(P, X);
  const Complex d1 = char_from_rows(rows, CharKind::Delta1);
  check_pole(d1, lambda, P.T(), P.tolerances().pole_guard, "Delta1");
  return aux_solution(X, rows, AuxKind::Psi) / d1;
}

Complex weyl_M(const DiracProblem& P, Complex lambda) {
  const auto rows = form_rows(P, problem_X(P, lambda));
  const Complex d1 = char_from_rows(rows, CharKind::Delta1);
  check_pole(d1, lambda, P.T(), P.tolerances().pole_guard, "Delta1");
  return char_from_rows(rows, CharKind::Delta2) / d1;
}

Complex weyl_M_via_Phi(const DiracProblem& P, Complex lambda) {
  return apply_form(P.U2(), weyl_solution_Phi(P, lambda));
}

Complex ratio_N(const DiracProblem& P, Complex lambda) {
  const auto rows = form_rows(P, problem_X(P, lambda));
  const Complex d11 = char_from_rows(rows, CharKind::Delta11);
  check_pole(d11, lambda, P.T(), P.tolerances().pole_guard, "Delta11");
  return char_from_rows(rows, CharKind::Delta1) / d11;
}

Complex ratio_N_via_Z(const DiracProblem& P, Complex lambda) {
  const auto Z = problem_Z(P, lambda);
  const Row2 u = apply_form(P.U1(), *Z.trajectory());
  check_pole(u(0), lambda, P.T(), P.tolerances().pole_guard, "Delta11");
  return -u(1) / u(0);
}

CombinedSolution v_solution(const DiracProblem& P, int which, Complex lambda) {
  if (which != 1 && which != 2) throw DomainError("v_solution: which must be 1 or 2");
  const auto Z = problem_Z(P, lambda);
  if (which == 1) return Z.column(0);
  const Row2 u = apply_form(P.U1(), *Z.trajectory());
  check_pole(u(0), lambda, P.T(), P.tolerances().pole_guard, "Delta11");
  return Z.combination(Spinor(-u(1) / u(0), 1.0));
}

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) {
    if (!std::isfinite(e.residual)) return std::numeric_limits<double>::infinity();
    m = std::max(m, e.residual);
  }
  return m;
}

IdentityReport verify_identities(const DiracProblem& P, Complex lambda, const std::vector<double>& x_samples) {
  IdentityReport rep;
  rep.lambda = lambda;
  const double T = P.T();
  const double guard = P.tolerances().pole_guard;
  auto add = [&rep](std::string name, double x, Complex r) { rep.entries.push_back({std::move(name), x, std::abs(r)}); };

  const auto X = problem_X(P, lambda);
  const auto Z = problem_Z(P, lambda);
  const FormRows rx = form_rows(P, X);
  const FormRows rz = form_rows(P, Z);
  const Complex omega = char_from_rows(rx, CharKind::Omega);
  const Complex d1 = char_from_rows(rx, CharKind::Delta1);
  const Complex d2 = char_from_rows(rx, CharKind::Delta2);
  const Complex d11 = char_from_rows(rx, CharKind::Delta11);

  // Determinants of any two forms agree on the X and Z bases.
  const std::pair<const char*, const Row2 FormRows::*> qs[] = {
      {"U1", &FormRows::U1}, {"U2", &FormRows::U2}, {"V1", &FormRows::V1}, {"V2", &FormRows::V2}};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Complex dx = det2(rx.*(qs[i].second), rx.*(qs[j].second));
      const Complex dz = det2(rz.*(qs[i].second), rz.*(qs[j].second));
      add(std::string("form_det_X_vs_Z[") + qs[i].first + "," + qs[j].first + "]", nan(), dx - dz);
    }

  add("Delta1_via_Z", nan(), d1 + rz.U1(1));
  add("Delta2_via_Z", nan(), d2 + rz.U2(1));
  add("Delta11_via_Z", nan(), d11 - rz.U1(0));

  const auto phi = aux_solution(X, rx, AuxKind::Phi);
  const auto theta = aux_solution(X, rx, AuxKind::Theta);
  const auto psi = aux_solution(X, rx, AuxKind::Psi);

  // Boundary-value table of phi, theta, psi.
  add("U1(phi)", nan(), apply_form(P.U1(), phi));
  add("U2(phi)-omega", nan(), apply_form(P.U2(), phi) - omega);
  add("V1(phi)-Delta1", nan(), phi(T)(0) - d1);
  add("V2(phi)-Delta11", nan(), phi(T)(1) - d11);
  add("U1(theta)-omega", nan(), apply_form(P.U1(), theta) - omega);
  add("U2(theta)", nan(), apply_form(P.U2(), theta));
  add("V1(theta)+Delta2", nan(), theta(T)(0) + d2);
  add("U1(psi)-Delta1", nan(), apply_form(P.U1(), psi) - d1);
  add("U2(psi)-Delta2", nan(), apply_form(P.U2(), psi) - d2);
  add("V1(psi)", nan(), psi(T)(0));
  add("V2(psi)+1", nan(), psi(T)(1) + 1.0);

  auto det_at = [](const Spinor& a, const Spinor& b) { return a(0) * b(1) - a(1) * b(0); };
  const auto Z2 = Z.column(1);
  for (double x : x_samples) {
    add("wronskian_X", x, X.determinant(x) - 1.0);
    add("wronskian_Z", x, Z.determinant(x) - 1.0);
    add("det[theta,phi]-omega", x, det_at(theta(x), phi(x)) - omega);
    add("det[psi,phi]-Delta1", x, det_at(psi(x), phi(x)) - d1);
    add("psi+Z2", x, (psi(x) + Z2(x)).norm());
  }

  if (near_pole(d1, lambda, T, guard)) {
    rep.skipped.emplace_back("Phi identities (Delta1 within pole guard)");
  } else {
    const auto Phi = psi / d1;
    const Complex M = d2 / d1;
    add("U1(Phi)-1", nan(), apply_form(P.U1(), Phi) - 1.0);
    add("Phi1(T)", nan(), Phi(T)(0));
    add("U2(Phi)-Delta2/Delta1", nan(), apply_form(P.U2(), Phi) - M);
    for (double x : x_samples) add("det[Phi,phi]-1", x, det_at(Phi(x), phi(x)) - 1.0);
    if (near_pole(omega, lambda, T, guard)) {
      rep.skipped.emplace_back("Phi from theta and phi (omega within pole guard)");
    } else {
      for (double x : x_samples) add("Phi-(theta+M*phi)/omega", x, (Phi(x) - (theta(x) + M * phi(x)) / omega).norm());
    }
  }

  if (near_pole(d11, lambda, T, guard)) {
    rep.skipped.emplace_back("v2 identities (Delta11 within pole guard)");
  } else {
    const Complex N = d1 / d11;
    add("N_via_Z", nan(), N + rz.U1(1) / rz.U1(0));
    const auto v1 = Z.column(0);
    const auto v2 = Z.combination(Spinor(N, 1.0));
    add("v1(T)-(1,0)", nan(), (v1(T) - Spinor(1.0, 0.0)).norm());
    add("U1(v2)", nan(), apply_form(P.U1(), v2));
    add("v22(T)-1", nan(), v2(T)(1) - 1.0);
    for (double x : x_samples) {
      add("det[v1,v2]-1", x, det_at(v1(x), v2(x)) - 1.0);
      // Independent construction from the X basis: U1(phi) = 0 and phi_2(T) = Delta11.
      add("v2-phi/Delta11", x, (v2(x) - phi(x) * (1.0 / d11)).norm());
    }
  }
  return rep;
}

FormRows CharacteristicEvaluator::rows(Complex lambda) const {
  const Key key{lambda.real(), lambda.imag()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = rows_.find(key); it != rows_.end()) return it->second;
  }
  FormRows r = form_rows(P_, problem_X(P_, lambda));
  std::lock_guard<std::mutex> lock(mu_);
  rows_.emplace(key, r);
  return r;
}

FormRowsWithDerivative CharacteristicEvaluator::rows_with_derivative(Complex lambda) const {
  const Key key{lambda.real(), lambda.imag()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = drows_.find(key); it != drows_.end()) return it->second;
  }
  FormRowsWithDerivative r = form_rows_with_derivative(P_, lambda);
  std::lock_guard<std::mutex> lock(mu_);
  drows_.emplace(key, r);
  return r;
}

std::size_t CharacteristicEvaluator::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return rows_.size() + drows_.size();
}

}  // namespace ndirac
