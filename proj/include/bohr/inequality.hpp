#pragma once

/**
 * @file inequality.hpp
 * @brief Generalized Bohr sums A_f(phi, p, r) = |a_0|^p phi_0(r) + sum |a_k| phi_k(r)
 *        and their verification against phi_0(r) up to the sharp radius.
 */

#include <bohr/radius.hpp>
#include <bohr/series.hpp>
#include <bohr/weights.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bohr {

struct BohrSum {
  double value = 0.0;
  /// Upper bound on the omitted sum_{k>M} |a_k| phi_k(r), from |a_k| <= (1-|a_0|^2)/(1+gamma).
  double truncation_bound = 0.0;
};

namespace detail {

inline void check_p(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (0, 2]");
}

inline double leading_term(complex c0, double p, double phi0) {
  const double m = std::abs(c0);
  return m == 0.0 ? 0.0 : std::pow(m, p) * phi0;
}

}  // namespace detail

/// Weights phi_0 ... phi_M and tail bounds tabulated on a list of radii, so
/// that many series can be summed against one family cheaply.
class WeightTable {
 public:
  WeightTable(const WeightFamily& family, std::vector<double> radii, int order)
      : radii_(std::move(radii)), order_(order) {
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    const auto stride = static_cast<std::size_t>(order) + 1;
    phi_.resize(radii_.size() * stride);
    tail_.resize(radii_.size());
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      for (int k = 0; k <= order; ++k) phi_[i * stride + static_cast<std::size_t>(k)] = phi_k(family, k, radii_[i]);
      tail_[i] = bohr::tail_beyond(family, order, radii_[i]);
    }
  }

  std::size_t size() const noexcept { return radii_.size(); }
  int order() const noexcept { return order_; }
  double radius(std::size_t i) const { return radii_[i]; }
  const std::vector<double>& radii() const noexcept { return radii_; }
  double phi(std::size_t i, int k) const {
    return phi_[i * (static_cast<std::size_t>(order_) + 1) + static_cast<std::size_t>(k)];
  }
  double tail_beyond(std::size_t i) const { return tail_[i]; }

 private:
  std::vector<double> radii_;
  int order_;
  std::vector<double> phi_;
  std::vector<double> tail_;
};

/// Bohr sum against row i of a weight table. Terms beyond the table order are
/// dropped and accounted for in the truncation bound.
inline BohrSum bohr_sum(const CoefficientSeries& series, const WeightTable& table, std::size_t i, double p,
                        DomainParams domain = {}) {
  detail::check_p(p);
  const int M = std::min(series.order(), table.order());
  BohrSum s;
  s.value = detail::leading_term(series[0], p, table.phi(i, 0));
  for (int k = 1; k <= M; ++k) s.value += std::abs(series[static_cast<std::size_t>(k)]) * table.phi(i, k);
  double omitted = table.tail_beyond(i);
  for (int k = M + 1; k <= table.order(); ++k) omitted += table.phi(i, k);
  s.truncation_bound = coefficient_bound(series[0], domain) * omitted;
  return s;
}

inline BohrSum bohr_sum(const CoefficientSeries& series, const WeightFamily& family, double p, double r,
                        DomainParams domain = {}) {
  detail::check_r(r);
  detail::check_p(p);
  return bohr_sum(series, WeightTable(family, {r}, series.order()), 0, p, domain);
}

struct BohrReport {
  std::vector<double> radii;
  std::vector<double> bohr_sums;
  std::vector<double> phi0_values;
  std::vector<double> truncation_bounds;
  double max_excess = -std::numeric_limits<double>::infinity();  ///< max over the grid of A_f - phi_0
  double tolerance = 1e-9;
  /// Largest violation of the coefficient bound |a_n| <= (1-|a_0|^2)/(1+gamma); positive
  /// values certify that the function is not in B(Omega_gamma).
  double membership_violation = 0.0;
  bool pass = false;
};

/// Radii 0, radius/(n-1), ..., radius.
inline std::vector<double> uniform_grid(double radius, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(grid_points));
  for (int j = 0; j < grid_points; ++j) g[static_cast<std::size_t>(j)] = radius * j / (grid_points - 1);
  g.back() = radius;
  return g;
}

/// Evaluates the Bohr sum of a series on every row of the table. The report
/// passes when A_f - phi_0 <= tolerance + truncation bound on every row and
/// the coefficient bound holds to 1e-10.
inline BohrReport verify_series(const CoefficientSeries& series, const WeightTable& table, DomainParams domain,
                                double p, double tolerance = 1e-9) {
  BohrReport rep;
  rep.tolerance = tolerance;
  const double c0 = std::abs(series[0]);
  rep.membership_violation =
      c0 > 1.0 + 1e-12 ? c0 - 1.0 : std::max(0.0, lemma_bound_report(series, domain).max_violation);
  bool ok = rep.membership_violation <= 1e-10;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto s = bohr_sum(series, table, i, p, domain);
    const double phi0v = table.phi(i, 0);
    rep.radii.push_back(table.radius(i));
    rep.bohr_sums.push_back(s.value);
    rep.phi0_values.push_back(phi0v);
    rep.truncation_bounds.push_back(s.truncation_bound);
    const double excess = s.value - phi0v;
    rep.max_excess = std::max(rep.max_excess, excess);
    if (!(excess <= tolerance + s.truncation_bound)) ok = false;
  }
  rep.pass = ok;
  return rep;
}

inline BohrReport verify_up_to_radius(const BoundedFunction& f, const RadiusQuery& query, double radius,
                                      int grid_points, int order = default_truncation_order,
                                      double tolerance = 1e-9) {
  validate(query);
  if (!(radius >= 0.0 && radius < 1.0)) throw std::domain_error("verification radius must lie in [0, 1)");
  const WeightTable table(query.family, uniform_grid(radius, grid_points), order);
  return verify_series(coefficients_of(f, order), table, query.domain, query.p, tolerance);
}

// ---------------------------------------------------------------------------
// Sharpness of the radius through the extremal maps, a -> 1-

struct ExtremalMargin {
  double margin = 0.0;                  ///< A_g(phi, p, r) - phi_0(r)
  double first_order_prediction = 0.0;  ///< (1-a)/(1-gamma) [2 sum phi_k - p (1+gamma) phi_0]
  int terms = 0;                        ///< coefficients summed before the remainder fell below 1e-17
};

inline ExtremalMargin extremal_margin(DomainParams domain, double a, const WeightFamily& family, double p, double r) {
  const double g = domain.gamma();
  if (!(a > g && a < 1.0)) throw std::invalid_argument("extremal margin needs gamma < a < 1");
  detail::check_p(p);
  detail::check_r(r);
  const double denom = 1.0 - a * g;
  const double c0 = (a - g) / denom;
  const double q = a * (1.0 - g) / denom;
  const double scale = (1.0 - a * a) / (a * denom);
  const double f0 = phi0(family, r);

  // |c_0|^p phi_0 - phi_0 without cancellation
  double margin = f0 * std::expm1(p * std::log(c0));
  double qk = 1.0;
  int k = 1;
  constexpr int max_terms = 10'000'000;
  for (; k <= max_terms; ++k) {
    qk *= q;
    margin += scale * qk * phi_k(family, k, r);
    if (k % 32 == 0 && scale * qk * q * tail_beyond(family, k, r) <= 1e-17 * std::max(1.0, std::abs(f0))) break;
  }
  ExtremalMargin out;
  out.margin = margin;
  out.first_order_prediction = (1.0 - a) / (1.0 - g) * (2.0 * tail_sum(family, r) - p * (1.0 + g) * f0);
  out.terms = k;
  return out;
}

/// (1 - x^p)/(1 - x^2) - p/2, non-negative for x in [0, 1) and p in (0, 2].
inline double p_bound_check(double x, double p) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("x must lie in [0, 1)");
  detail::check_p(p);
  if (x == 0.0) return 1.0 - 0.5 * p;
  return -std::expm1(p * std::log(x)) / ((1.0 - x) * (1.0 + x)) - 0.5 * p;
}

}  // namespace bohr
