#pragma once

/**
 * @file operators.hpp
 * @brief beta-Cesaro, alpha-Cesaro and Bernardi operators: coefficient and
 *        integral forms, sup-norm bounds, and Bohr-type radii.
 *
 *   T_beta[f](z)  = sum_n (1/(n+1)) sum_k Gamma(n-k+beta)/(Gamma(n-k+1)Gamma(beta)) a_k z^n
 *                 = int_0^1 f(tz) / (1 - tz)^beta dt
 *   C^alpha f(z)  = sum_n (1/A_n^{alpha+1}) sum_k A_{n-k}^alpha a_k z^n
 *                 = (alpha+1) int_0^1 f(tz) (1-t)^alpha / (1-tz)^{alpha+1} dt
 *   L_delta[f](z) = sum_{n>=m} a_n / (n + delta) z^n = int_0^1 f(zt) t^{delta-1} dt
 *
 * The operator specs reuse the parameter structs of the matching weight
 * families, whose phi_0 is also the operator's sup-norm bound on B(D).
 */

#include <bohr/quadrature.hpp>
#include <bohr/radius.hpp>
#include <bohr/recurrences.hpp>
#include <bohr/series.hpp>
#include <bohr/weights.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bohr {

using OperatorSpec = std::variant<BetaCesaro, AlphaCesaro, Bernardi>;

inline WeightFamily weight_family(const OperatorSpec& spec) {
  return std::visit([](const auto& s) -> WeightFamily { return s; }, spec);
}

inline void validate(const OperatorSpec& spec) { validate(weight_family(spec)); }

inline std::string describe(const OperatorSpec& spec) { return describe(weight_family(spec)); }

inline CoefficientSeries apply_coefficient_form(const OperatorSpec& spec, const CoefficientSeries& series) {
  validate(spec);
  const int M = series.order();
  const auto n_terms = static_cast<std::size_t>(M) + 1;
  std::vector<complex> b(n_terms);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Bernardi>) {
          for (int n = 0; n < std::min(s.m, M + 1); ++n)
            if (std::abs(series[static_cast<std::size_t>(n)]) > 1e-15)
              throw std::invalid_argument("Bernardi operator needs a_n = 0 for n < m");
          for (int n = s.m; n <= M; ++n) b[static_cast<std::size_t>(n)] = series[static_cast<std::size_t>(n)] / (n + s.delta);
        } else {
          // Convolution weights w_j and row normalisation d_n.
          std::vector<double> w(n_terms), d(n_terms);
          w[0] = 1.0;
          d[0] = 1.0;
          for (std::size_t j = 1; j < n_terms; ++j) {
            const double jj = static_cast<double>(j);
            if constexpr (std::is_same_v<T, BetaCesaro>) {
              w[j] = w[j - 1] * (jj - 1.0 + s.beta) / jj;  // gamma_ratio(j, beta)
              d[j] = jj + 1.0;
            } else {
              w[j] = w[j - 1] * (s.alpha + jj) / jj;              // A_j^alpha
              d[j] = d[j - 1] * (s.alpha + 1.0 + jj) / jj;        // A_j^{alpha+1}
            }
          }
          for (std::size_t n = 0; n < n_terms; ++n) {
            complex acc{};
            for (std::size_t k = 0; k <= n; ++k) acc += w[n - k] * series[k];
            b[n] = acc / d[n];
          }
        }
      },
      spec);
  return CoefficientSeries(std::move(b));
}

/// Numerical value of the integral form at z, |z| < 1. The callable must
/// accept a complex argument and be analytic on the closed disk of radius |z|.
template <class F>
complex apply_integral_form(const OperatorSpec& spec, F&& f, complex z, int quadrature_nodes = default_quadrature_nodes) {
  validate(spec);
  if (!(std::abs(z) < 1.0)) throw std::domain_error("integral form needs |z| < 1");
  return std::visit(
      [&](const auto& s) -> complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaCesaro>) {
          return integrate_unit_interval(
              [&](double t, double) -> complex { return f(t * z) * std::pow(1.0 - t * z, -s.beta); },
              quadrature_nodes);
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          return (s.alpha + 1.0) * integrate_unit_interval(
                                       [&](double t, double tc) -> complex {
                                         return f(t * z) * std::pow(tc, s.alpha) * std::pow(1.0 - t * z, -(s.alpha + 1.0));
                                       },
                                       quadrature_nodes);
        } else {
          return integrate_unit_interval(
              [&](double t, double) -> complex { return f(t * z) * std::pow(t, s.delta - 1.0); }, quadrature_nodes);
        }
      },
      spec);
}

/// Sharp bound of |operator[f](z)| over f in B(D) at |z| = r; coincides with phi_0(r) of the operator's weights.
inline double operator_bound(const OperatorSpec& spec, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("operator bound needs 0 < r < 1");
  return phi0(weight_family(spec), r);
}

struct OperatorRadius {
  RadiusResult result;
  /// Residual of the operator's own radius equation at the root; only checked for p = 1.
  std::optional<double> equation_residual;
};

namespace detail {

// Radius equations written directly in terms of the operator parameters
// (p = 1), independent of the weight-family evaluators.
inline double operator_equation(const OperatorSpec& spec, double gamma, double x) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaCesaro>) {
          if (beta_is_one(s.beta)) return 2.0 * x - (3.0 + gamma) * (1.0 - x) * std::log(1.0 / (1.0 - x));
          return (3.0 + gamma) * (1.0 - std::pow(1.0 - x, 1.0 - s.beta)) / (1.0 - s.beta) -
                 2.0 * (std::pow(1.0 - x, -s.beta) - 1.0) / s.beta;
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          double sum = 0.0, xn = 1.0;
          for (int n = 0; xn > 1e-18; ++n, xn *= x) sum += xn / (n + s.alpha + 1.0);
          return (3.0 + gamma) * (1.0 + s.alpha) * sum - 2.0 / (1.0 - x);
        } else {
          double sum = 0.0, xn = std::pow(x, s.m);
          for (int n = 0; xn > 1e-18; ++n, xn *= x) sum += xn / (n + s.m + s.delta);
          return (3.0 + gamma) * std::pow(x, s.m) / (s.m + s.delta) - 2.0 * sum;
        }
      },
      spec);
}

}  // namespace detail

/// Bohr-type radius of the operator on B(Omega_gamma). p = 1 matches the
/// first power of |a_0| in the operator inequalities; other p are an extrapolation.
inline OperatorRadius operator_bohr_radius(const OperatorSpec& spec, DomainParams domain, double p = 1.0,
                                           double tol = 1e-12) {
  validate(spec);
  OperatorRadius out;
  out.result = minimal_root(RadiusQuery{weight_family(spec), domain, p}, tol);
  if (p == 1.0) {
    const double res = detail::operator_equation(spec, domain.gamma(), out.result.radius);
    if (!(std::abs(res) <= 1e-9))
      throw std::runtime_error("operator radius fails its own radius equation for " + describe(spec) +
                               " (residual " + std::to_string(res) + ")");
    out.equation_residual = res;
  }
  return out;
}

}  // namespace bohr
