#include "ndirac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ndirac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double to_unit(double x, double lo, double hi) { return std::clamp((2.0 * x - lo - hi) / (hi - lo), -1.0, 1.0); }

bool all_finite(const ChebCoeffs<Complex>& c) {
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (!std::isfinite(c(k).real()) || !std::isfinite(c(k).imag())) return false;
  return true;
}

}  // namespace

ScalarField::ScalarField(Rep rep) : rep_(std::move(rep)) {
  std::visit(overloaded{
                 [](const ZeroFn&) {},
                 [](const ConstantFn& f) {
                   if (!std::isfinite(f.value.real()) || !std::isfinite(f.value.imag()))
                     throw DomainError("constant field value is not finite");
                 },
                 [](const TrigFn& f) {
                   if (!std::isfinite(std::abs(f.amplitude)) || !std::isfinite(f.frequency) ||
                       !std::isfinite(f.phase))
                     throw DomainError("trigonometric field parameters are not finite");
                 },
                 [](const ChebyshevFn& f) {
                   if (f.coeffs.size() == 0) throw DomainError("empty Chebyshev coefficient list");
                   if (!(f.hi > f.lo)) throw DomainError("Chebyshev interval must satisfy lo < hi");
                   if (!all_finite(f.coeffs)) throw DomainError("Chebyshev coefficients are not finite");
                 },
                 [](const PiecewiseChebyshevFn& f) {
                   if (f.breaks.size() < 2 || f.panels.size() + 1 != f.breaks.size())
                     throw DomainError("piecewise field needs panels.size() + 1 breaks");
                   for (std::size_t i = 0; i + 1 < f.breaks.size(); ++i)
                     if (!(f.breaks[i + 1] > f.breaks[i])) throw DomainError("piecewise breaks must increase");
                   for (const auto& c : f.panels)
                     if (c.size() == 0 || !all_finite(c)) throw DomainError("invalid piecewise panel coefficients");
                 },
             },
             rep_);
}

ScalarField ScalarField::chebyshev(ChebCoeffs<Complex> c, double lo, double hi) {
  return ScalarField(ChebyshevFn{std::move(c), lo, hi});
}

ScalarField ScalarField::chebyshev(const std::vector<double>& c, double lo, double hi) {
  ChebCoeffs<Complex> cc(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) cc(static_cast<Eigen::Index>(k)) = c[k];
  return chebyshev(std::move(cc), lo, hi);
}

ScalarField ScalarField::piecewise(std::vector<double> breaks, std::vector<ChebCoeffs<Complex>> panels) {
  return ScalarField(PiecewiseChebyshevFn{std::move(breaks), std::move(panels)});
}

ScalarField ScalarField::hat(double center, double half_width, Complex amplitude, double lo, double hi) {
  const double a = center - half_width;
  const double b = center + half_width;
  if (!(half_width > 0) || a < lo || b > hi) throw DomainError("hat support must lie inside the interval");
  std::vector<double> breaks{lo};
  std::vector<ChebCoeffs<Complex>> panels;
  auto linear = [](Complex v0, Complex v1) {
    ChebCoeffs<Complex> c(2);
    c << 0.5 * (v0 + v1), 0.5 * (v1 - v0);
    return c;
  };
  if (a > lo) {
    breaks.push_back(a);
    panels.push_back(linear(0.0, 0.0));
  }
  breaks.push_back(center);
  panels.push_back(linear(0.0, amplitude));
  breaks.push_back(b);
  panels.push_back(linear(amplitude, 0.0));
  if (b < hi) {
    breaks.push_back(hi);
    panels.push_back(linear(0.0, 0.0));
  }
  return piecewise(std::move(breaks), std::move(panels));
}

Complex ScalarField::operator()(double x, double hint) const {
  return std::visit(overloaded{
                        [](const ZeroFn&) { return Complex(0.0); },
                        [](const ConstantFn& f) { return f.value; },
                        [x](const TrigFn& f) { return f.amplitude * std::cos(f.frequency * x + f.phase); },
                        [x](const ChebyshevFn& f) { return chebyshev_eval(f.coeffs, to_unit(x, f.lo, f.hi)); },
                        [x, hint](const PiecewiseChebyshevFn& f) {
                          const double locate = std::isnan(hint) ? x : hint;
                          auto it = std::upper_bound(f.breaks.begin(), f.breaks.end(), locate);
                          std::size_t i = it == f.breaks.begin() ? 0 : static_cast<std::size_t>(it - f.breaks.begin()) - 1;
                          i = std::min(i, f.panels.size() - 1);
                          return chebyshev_eval(f.panels[i], to_unit(x, f.breaks[i], f.breaks[i + 1]));
                        },
                    },
                    rep_);
}

ScalarField ScalarField::reflected(double lo, double hi) const {
  return std::visit(overloaded{
                        [](const ZeroFn&) { return ScalarField(); },
                        [](const ConstantFn& f) { return ScalarField(f); },
                        [lo, hi](const TrigFn& f) {
                          // cos(k (lo + hi - x) + phi) = cos(k x - k (lo + hi) - phi)
                          return ScalarField(TrigFn{f.amplitude, f.frequency, -f.frequency * (lo + hi) - f.phase});
                        },
                        [lo, hi](const ChebyshevFn& f) {
                          // series on [a, b] becomes a series on [lo + hi - b, lo + hi - a]
                          return ScalarField(ChebyshevFn{chebyshev_reflect(f.coeffs), lo + hi - f.hi, lo + hi - f.lo});
                        },
                        [lo, hi](const PiecewiseChebyshevFn& f) {
                          PiecewiseChebyshevFn r;
                          for (auto it = f.breaks.rbegin(); it != f.breaks.rend(); ++it) r.breaks.push_back(lo + hi - *it);
                          for (auto it = f.panels.rbegin(); it != f.panels.rend(); ++it)
                            r.panels.push_back(chebyshev_reflect(*it));
                          return ScalarField(std::move(r));
                        },
                    },
                    rep_);
}

ScalarField ScalarField::scaled(Complex s) const {
  return std::visit(overloaded{
                        [](const ZeroFn&) { return ScalarField(); },
                        [s](const ConstantFn& f) { return ScalarField(ConstantFn{s * f.value}); },
                        [s](const TrigFn& f) { return ScalarField(TrigFn{s * f.amplitude, f.frequency, f.phase}); },
                        [s](const ChebyshevFn& f) {
                          return ScalarField(ChebyshevFn{(s * f.coeffs.array()).matrix(), f.lo, f.hi});
                        },
                        [s](const PiecewiseChebyshevFn& f) {
                          PiecewiseChebyshevFn r{f.breaks, {}};
                          for (const auto& c : f.panels) r.panels.push_back((s * c.array()).matrix());
                          return ScalarField(std::move(r));
                        },
                    },
                    rep_);
}

ChebCoeffs<Complex> ScalarField::to_chebyshev(double lo, double hi, int degree) const {
  if (const auto* z = std::get_if<ZeroFn>(&rep_)) {
    (void)z;
    return ChebCoeffs<Complex>::Zero(1);
  }
  if (const auto* c = std::get_if<ConstantFn>(&rep_)) {
    ChebCoeffs<Complex> r(1);
    r(0) = c->value;
    return r;
  }
  if (const auto* ch = std::get_if<ChebyshevFn>(&rep_); ch && ch->lo == lo && ch->hi == hi) return ch->coeffs;
  const double mid = 0.5 * (lo + hi);
  return chebyshev_fit<Complex>([this, mid](double x) { return (*this)(x, mid); }, lo, hi, degree);
}

std::vector<double> ScalarField::breakpoints() const {
  if (const auto* pw = std::get_if<PiecewiseChebyshevFn>(&rep_)) {
    if (pw->breaks.size() <= 2) return {};
    return {pw->breaks.begin() + 1, pw->breaks.end() - 1};
  }
  return {};
}

PotentialOmega::PotentialOmega(double T, ScalarField p, ScalarField q) : T_(T), p_(std::move(p)), q_(std::move(q)) {
  if (!(T > 0) || !std::isfinite(T)) throw DomainError("interval length T must be positive and finite");
}

PotentialOmega PotentialOmega::chebyshev(double T, const std::vector<double>& p, const std::vector<double>& q) {
  return {T, ScalarField::chebyshev(p, 0.0, T), ScalarField::chebyshev(q, 0.0, T)};
}

PotentialOmega PotentialOmega::reflect() const {
  return {T_, p_.reflected(0.0, T_), q_.reflected(0.0, T_).scaled(-1.0)};
}

std::vector<double> PotentialOmega::breakpoints() const {
  auto b = p_.breakpoints();
  const auto bq = q_.breakpoints();
  b.insert(b.end(), bq.begin(), bq.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double PotentialOmega::sup_distance(const PotentialOmega& other, int samples) const {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = T_ * i / (samples - 1);
    best = std::max(best, std::abs(p(x) - other.p(x)) + std::abs(q(x) - other.q(x)));
  }
  return best;
}

Mat2 coefficient_matrix(const PotentialOmega& omega, Complex lambda, double x) {
  if (!(x >= 0.0 && x <= omega.T())) {
    std::ostringstream msg;
    msg << "coefficient_matrix: x = " << x << " outside [0, " << omega.T() << "]";
    throw DomainError(msg.str());
  }
  return coefficient_matrix(omega.p(x), omega.q(x), lambda);
}

}  // namespace ndirac
