#include "ndirac/problem.hpp"

#include <algorithm>
#include <cmath>

namespace ndirac {

DiracProblem::DiracProblem(PotentialOmega omega, StieltjesForm u1, StieltjesForm u2, Tolerances tol)
    : omega_(std::move(omega)), u1_(std::move(u1)), u2_(std::move(u2)), tol_(tol) {
  if (std::abs(u1_.jump()(0)) + std::abs(u1_.jump()(1)) == 0.0)
    throw DomainError("U1 needs a nonzero jump at 0: |h11| + |h12| != 0");
  if (u1_.label() != FormLabel::U1) u1_ = u1_.with_label(FormLabel::U1);
  if (u2_.label() == FormLabel::Custom) u2_ = u2_.with_label(FormLabel::U2);
  const double T = omega_.T();
  if (std::abs(u1_.T() - T) > 1e-14 * T || std::abs(u2_.T() - T) > 1e-14 * T)
    throw DomainError("forms and potential disagree on the interval length");
  if (!(tol_.ode >= 1e-14 && tol_.ode <= 1e-3)) throw DomainError("ode tolerance outside [1e-14, 1e-3]");
  if (!(tol_.root > 0.0) || !(tol_.pole_guard > 0.0)) throw DomainError("tolerances must be positive");

  stops_ = omega_.breakpoints();
  for (const auto* f : {&u1_, &u2_}) {
    const auto s = f->stop_points();
    stops_.insert(stops_.end(), s.begin(), s.end());
  }
  std::sort(stops_.begin(), stops_.end());
  stops_.erase(std::unique(stops_.begin(), stops_.end()), stops_.end());
}

}  // namespace ndirac
