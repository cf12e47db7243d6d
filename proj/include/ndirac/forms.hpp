#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "ndirac/potential.hpp"

namespace ndirac {

enum class FormLabel { U1, U2, Custom };

/// Point mass w at t in (0, T].
struct FormAtom {
  double t = 0.0;
  Spinor w = Spinor::Zero();
};

/// Absolutely continuous part: density (d1, d2) supported on [lo, hi].
struct FormDensity {
  ScalarField d1;
  ScalarField d2;
  double lo = 0.0;
  double hi = 0.0;
};

/// U(y) = h . y(0) + sum_k w_k . y(t_k) + int (d1 y1 + d2 y2) dt.
/// The pairing is bilinear (no conjugation).
class StieltjesForm {
 public:
  StieltjesForm(double T, Spinor jump, std::vector<FormAtom> atoms = {}, std::optional<FormDensity> density = {},
                FormLabel label = FormLabel::Custom);

  /// h . y(0) with no nonlocal part.
  static StieltjesForm jump_only(double T, const Spinor& h, FormLabel label = FormLabel::Custom) {
    return StieltjesForm(T, h, {}, {}, label);
  }
  /// w . y(t).
  static StieltjesForm point(double T, double t, const Spinor& w, FormLabel label = FormLabel::Custom) {
    return StieltjesForm(T, Spinor::Zero(), {{t, w}}, {}, label);
  }

  double T() const { return T_; }
  const Spinor& jump() const { return jump_; }
  const std::vector<FormAtom>& atoms() const { return atoms_; }
  const std::optional<FormDensity>& density() const { return density_; }
  FormLabel label() const { return label_; }

  /// Keep only the part of the measure on [0, a]. Atoms at t = a stay (right continuity).
  StieltjesForm truncate(double a) const;

  /// The part of the measure on (lo, hi], with no jump at 0.
  StieltjesForm restrict_to(double lo, double hi) const;

  StieltjesForm with_label(FormLabel label) const;

  /// Abscissae where the integrand may lose smoothness: atoms, density support ends and breaks.
  std::vector<double> stop_points() const;

 private:
  double T_;
  Spinor jump_;
  std::vector<FormAtom> atoms_;
  std::optional<FormDensity> density_;
  FormLabel label_;
};

std::string to_string(FormLabel label);

/// V1(y) = y1(T) or V2(y) = y2(T).
struct EndpointForm {
  explicit EndpointForm(int c) : component(c) {
    if (c != 1 && c != 2) throw DomainError("endpoint form component must be 1 or 2");
  }
  int component;
};

namespace detail {

inline Complex pair(const Spinor& w, const Spinor& y) { return w(0) * y(0) + w(1) * y(1); }

template <class State>
auto pair(const Spinor& w, const State& y) {
  return (w.transpose() * y).eval();
}

inline Complex endpoint_row(const Spinor& y, int c) { return y(c - 1); }

template <class State>
auto endpoint_row(const State& y, int c) {
  return y.row(c - 1).eval();
}

inline const std::vector<double>& gauss32_nodes() {
  static const std::vector<double> n = boost::math::quadrature::gauss<double, 32>::abscissa();
  return n;
}
inline const std::vector<double>& gauss32_weights() {
  static const std::vector<double> w = boost::math::quadrature::gauss<double, 32>::weights();
  return w;
}

void require_covered(bool ok, double x, const char* what);

}  // namespace detail

/// Apply a form to a solution (Spinor state gives a scalar, a matrix state gives a row
/// with one entry per column). Density integrals use 32-point Gauss panels aligned with
/// the trajectory's steps; `subdivide` splits each panel further.
template <class Traj>
auto apply_form(const StieltjesForm& form, const Traj& y, int subdivide = 1) {
  detail::require_covered(y.covers(0.0), 0.0, "form jump at 0");
  auto total = detail::pair(form.jump(), y(0.0));
  for (const auto& atom : form.atoms()) {
    detail::require_covered(y.covers(atom.t), atom.t, "form atom");
    total += detail::pair(atom.w, y(atom.t));
  }
  if (const auto& dens = form.density()) {
    detail::require_covered(y.covers(dens->lo) && y.covers(dens->hi), dens->hi, "form density support");
    std::vector<double> cuts;
    for (double m : y.mesh())
      if (m > dens->lo && m < dens->hi) cuts.push_back(m);
    for (double b : form.stop_points())
      if (b > dens->lo && b < dens->hi) cuts.push_back(b);
    cuts.push_back(dens->lo);
    cuts.push_back(dens->hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const auto& nodes = detail::gauss32_nodes();
    const auto& weights = detail::gauss32_weights();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double len = (cuts[i + 1] - cuts[i]) / subdivide;
      for (int s = 0; s < subdivide; ++s) {
        const double a = cuts[i] + s * len;
        const double mid = a + 0.5 * len, half = 0.5 * len;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
          for (double sign : {-1.0, 1.0}) {
            const double t = mid + sign * half * nodes[k];
            const Spinor d(dens->d1(t, mid), dens->d2(t, mid));
            total += detail::pair(d, y(t)) * Complex(half * weights[k]);
          }
        }
      }
    }
  }
  return total;
}

template <class Traj>
auto apply_endpoint(const EndpointForm& form, const Traj& y, double T) {
  detail::require_covered(y.covers(T), T, "endpoint form");
  return detail::endpoint_row(y(T), form.component);
}

}  // namespace ndirac
