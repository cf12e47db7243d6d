#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace ndirac {

template <class Scalar>
using ChebCoeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Clenshaw evaluation of sum_k c_k T_k(t), t in [-1, 1].
template <class Derived>
typename Derived::Scalar chebyshev_eval(const Eigen::MatrixBase<Derived>& c, double t) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = c.size();
  if (n == 0) return Scalar(0);
  Scalar b1(0), b2(0);
  for (Eigen::Index k = n - 1; k >= 1; --k) {
    const Scalar b0 = c(k) + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c(0) + t * b1 - b2;
}

/// Chebyshev interpolant of f on [a, b] through degree+1 first-kind nodes.
template <class Scalar>
ChebCoeffs<Scalar> chebyshev_fit(const std::function<Scalar(double)>& f, double a, double b,
                                 int degree) {
  const int n = degree + 1;
  std::vector<Scalar> values(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = M_PI * (j + 0.5) / n;
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
    values[static_cast<std::size_t>(j)] = f(x);
  }
  ChebCoeffs<Scalar> c(n);
  for (int k = 0; k < n; ++k) {
    Scalar s(0);
    for (int j = 0; j < n; ++j) s += values[static_cast<std::size_t>(j)] * std::cos(M_PI * k * (j + 0.5) / n);
    c(k) = s * (2.0 / n);
  }
  c(0) *= 0.5;
  return c;
}

/// Reflection t -> -t maps c_k to (-1)^k c_k.
template <class Derived>
ChebCoeffs<typename Derived::Scalar> chebyshev_reflect(const Eigen::MatrixBase<Derived>& c) {
  ChebCoeffs<typename Derived::Scalar> r = c;
  for (Eigen::Index k = 1; k < r.size(); k += 2) r(k) = -r(k);
  return r;
}

}  // namespace ndirac
