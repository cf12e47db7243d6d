#include "ndirac/forms.hpp"

#include <algorithm>
#include <sstream>

namespace ndirac {

StieltjesForm::StieltjesForm(double T, Spinor jump, std::vector<FormAtom> atoms, std::optional<FormDensity> density,
                             FormLabel label)
    : T_(T), jump_(std::move(jump)), atoms_(std::move(atoms)), density_(std::move(density)), label_(label) {
  if (!(T > 0.0)) throw DomainError("form interval length must be positive");
  if (!jump_.allFinite()) throw DomainError("form jump is not finite");
  if (label_ == FormLabel::U1 && std::abs(jump_(0)) + std::abs(jump_(1)) == 0.0)
    throw DomainError("U1 needs a nonzero jump at 0: |h11| + |h12| != 0");
  for (const auto& a : atoms_) {
    if (!(a.t > 0.0 && a.t <= T_)) {
      std::ostringstream msg;
      msg << "form atom at t = " << a.t << " outside (0, " << T_ << "]";
      throw DomainError(msg.str());
    }
    if (!a.w.allFinite()) throw DomainError("form atom weight is not finite");
  }
  std::stable_sort(atoms_.begin(), atoms_.end(), [](const FormAtom& a, const FormAtom& b) { return a.t < b.t; });
  if (density_) {
    if (!(density_->lo >= 0.0 && density_->lo < density_->hi && density_->hi <= T_))
      throw DomainError("form density support must satisfy 0 <= lo < hi <= T");
    if (density_->d1.is_zero() && density_->d2.is_zero()) density_.reset();
  }
}

StieltjesForm StieltjesForm::truncate(double a) const {
  if (!(a > 0.0 && a <= T_)) {
    std::ostringstream msg;
    msg << "truncation point " << a << " outside (0, " << T_ << "]";
    throw DomainError(msg.str());
  }
  std::vector<FormAtom> kept;
  for (const auto& atom : atoms_)
    if (atom.t <= a) kept.push_back(atom);
  std::optional<FormDensity> dens;
  if (density_ && density_->lo < a) {
    dens = *density_;
    dens->hi = std::min(dens->hi, a);
  }
  return StieltjesForm(T_, jump_, std::move(kept), std::move(dens), label_);
}

StieltjesForm StieltjesForm::restrict_to(double lo, double hi) const {
  if (!(lo >= 0.0 && lo < hi && hi <= T_)) throw DomainError("restrict_to needs 0 <= lo < hi <= T");
  std::vector<FormAtom> kept;
  for (const auto& atom : atoms_)
    if (atom.t > lo && atom.t <= hi) kept.push_back(atom);
  std::optional<FormDensity> dens;
  if (density_ && density_->hi > lo && density_->lo < hi) {
    dens = *density_;
    dens->lo = std::max(dens->lo, lo);
    dens->hi = std::min(dens->hi, hi);
  }
  return StieltjesForm(T_, Spinor::Zero(), std::move(kept), std::move(dens), FormLabel::Custom);
}

StieltjesForm StieltjesForm::with_label(FormLabel label) const {
  return StieltjesForm(T_, jump_, atoms_, density_, label);
}

std::vector<double> StieltjesForm::stop_points() const {
  std::vector<double> out;
  for (const auto& a : atoms_) out.push_back(a.t);
  if (density_) {
    out.push_back(density_->lo);
    out.push_back(density_->hi);
    for (const auto* f : {&density_->d1, &density_->d2}) {
      const auto b = f->breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(FormLabel label) {
  switch (label) {
    case FormLabel::U1: return "U1";
    case FormLabel::U2: return "U2";
    case FormLabel::Custom: return "custom";
  }
  return "custom";
}

namespace detail {

void require_covered(bool ok, double x, const char* what) {
  if (!ok) {
    std::ostringstream msg;
    msg << what << ": trajectory does not cover x = " << x;
    throw DomainError(msg.str());
  }
}

}  // namespace detail

}  // namespace ndirac
