#pragma once

// Fixed-node tanh-sinh quadrature on [0, 1]. The integrand receives both t
// and 1 - t, each computed without cancellation, so algebraic endpoint
// singularities such as t^(s) or (1-t)^(s), s > -1, can be integrated.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bohr {

inline constexpr int default_quadrature_nodes = 401;

template <class F>
auto integrate_unit_interval(F&& f, int nodes = default_quadrature_nodes) {
  using Result = decltype(f(0.5, 0.5));
  if (nodes < 3) throw std::invalid_argument("quadrature needs at least 3 nodes");
  // Abscissae reach min(t, 1-t) ~ 1e-137 at the ends of the window.
  constexpr double s_max = 5.3;
  constexpr double half_pi = 0.5 * std::numbers::pi;
  const int half = (nodes - 1) / 2;
  const double h = s_max / half;
  Result sum{};
  for (int i = -half; i <= half; ++i) {
    const double s = i * h;
    const double u = half_pi * std::sinh(s);
    const double cu = std::cosh(u);
    const double w = h * half_pi * std::cosh(s) / (2.0 * cu * cu);
    const double t = 1.0 / (1.0 + std::exp(-2.0 * u));
    const double tc = 1.0 / (1.0 + std::exp(2.0 * u));
    sum += w * f(t, tc);
  }
  return sum;
}

}  // namespace bohr
