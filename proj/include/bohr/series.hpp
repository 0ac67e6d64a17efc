#pragma once

/**
 * @file series.hpp
 * @brief Truncated Taylor series of bounded analytic functions on the
 *        shifted disks Omega_gamma, and generators for test members.
 *
 * Omega_gamma = { z : |z + gamma/(1-gamma)| < 1/(1-gamma) }, 0 <= gamma < 1,
 * contains the unit disk, and the affine map w = (1-gamma) z + gamma sends it
 * onto the unit disk. Every function here is represented by its Taylor
 * coefficients at the origin, c_0 ... c_M.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bohr {

using complex = std::complex<double>;

inline constexpr int default_truncation_order = 200;

/// Shift parameter gamma of Omega_gamma; gamma = 0 is the unit disk.
class DomainParams {
 public:
  DomainParams() = default;
  explicit DomainParams(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
      throw std::invalid_argument("gamma must lie in [0, 1), got " + std::to_string(gamma));
  }

  double gamma() const noexcept { return gamma_; }

  bool operator==(const DomainParams&) const = default;

 private:
  double gamma_ = 0.0;
};

/// Coefficients c_0 ... c_M of a truncated power series. Never empty, always finite.
class CoefficientSeries {
 public:
  CoefficientSeries() : c_{complex{}} {}

  explicit CoefficientSeries(std::vector<complex> c) : c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("coefficient series needs at least c_0");
    for (const auto& v : c_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("coefficient series contains a non-finite entry");
  }

  CoefficientSeries(std::initializer_list<complex> c)
      : CoefficientSeries(std::vector<complex>(c)) {}

  static CoefficientSeries zeros(int order) {
    if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
    return CoefficientSeries(std::vector<complex>(static_cast<std::size_t>(order) + 1));
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const noexcept { return c_.size(); }

  const complex& operator[](std::size_t n) const { return c_[n]; }
  std::span<const complex> coefficients() const noexcept { return c_; }

  /// Truncates to, or zero-pads up to, the given order.
  CoefficientSeries resized(int order) const {
    if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
    std::vector<complex> out(c_);
    out.resize(static_cast<std::size_t>(order) + 1, complex{});
    return CoefficientSeries(std::move(out));
  }

  complex evaluate(complex z) const {
    complex acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  bool operator==(const CoefficientSeries&) const = default;

 private:
  std::vector<complex> c_;
};

// ---------------------------------------------------------------------------
// Members of B(Omega_gamma)

/// The Moebius map (a - gamma - (1-gamma) z) / (1 - a gamma - a (1-gamma) z),
/// which sends Omega_gamma univalently onto the unit disk.
struct Extremal {
  Extremal(DomainParams d, double a_) : domain(d), a(a_) {
    if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("extremal parameter a must lie in [0, 1)");
  }
  DomainParams domain;
  double a;
};

/// rotation * prod (w - z_i) / (1 - conj(z_i) w) evaluated at w = (1-gamma) z + gamma.
struct BlaschkeComposed {
  BlaschkeComposed(DomainParams d, std::vector<complex> zs, complex rot = 1.0)
      : domain(d), zeros(std::move(zs)), rotation(rot) {
    for (const auto& z : zeros)
      if (!(std::abs(z) < 1.0)) throw std::invalid_argument("Blaschke zeros must lie strictly inside the unit disk");
    if (std::abs(std::abs(rotation) - 1.0) > 1e-12) throw std::invalid_argument("Blaschke rotation must be unimodular");
  }
  DomainParams domain;
  std::vector<complex> zeros;
  complex rotation;
};

/// Arbitrary coefficients; membership in B(Omega_gamma) is not implied.
struct Raw {
  CoefficientSeries series;
};

using BoundedFunction = std::variant<Extremal, BlaschkeComposed, Raw>;

// ---------------------------------------------------------------------------
// Coefficient generators

/// Taylor coefficients of the extremal map. For a > 0 they decay like
/// (a(1-gamma)/(1-a gamma))^k; for a = 0 the map is affine.
inline CoefficientSeries extremal_coefficients(DomainParams domain, double a, int order) {
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("extremal parameter a must lie in [0, 1)");
  if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
  const double g = domain.gamma();
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  if (a == 0.0) {
    // (-gamma - (1-gamma) z) / 1; the k >= 1 formula has a removable singularity here.
    c[0] = -g;
    if (order >= 1) c[1] = -(1.0 - g);
    return CoefficientSeries(std::move(c));
  }
  const double denom = 1.0 - a * g;
  const double q = a * (1.0 - g) / denom;
  const double scale = (1.0 - a * a) / (a * denom);
  c[0] = (a - g) / denom;
  double qk = 1.0;
  for (int k = 1; k <= order; ++k) {
    qk *= q;
    c[static_cast<std::size_t>(k)] = -scale * qk;
  }
  return CoefficientSeries(std::move(c));
}

/// Coefficients of z -> F((1-gamma) z + gamma) up to `order`, accumulated from
/// the binomial expansion of every power ((1-gamma) z + gamma)^k, k <= outer.order().
/// The result is exact for polynomial F; for a truncated non-polynomial F the
/// outer series must be long enough that its tail is negligible.
inline CoefficientSeries affine_compose(const CoefficientSeries& outer, DomainParams domain, int order) {
  if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
  const double g = domain.gamma();
  const int K = outer.order();
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  if (g == 0.0) {
    for (int n = 0; n <= std::min(order, K); ++n) c[static_cast<std::size_t>(n)] = outer[static_cast<std::size_t>(n)];
    return CoefficientSeries(std::move(c));
  }
  // w(k, n) = C(k, n) (1-g)^n g^(k-n) <= 1, advanced along k by the ratio
  // g (k+1) / (k+1-n).
  double lead = 1.0;  // (1-g)^n
  for (int n = 0; n <= std::min(order, K); ++n) {
    complex acc{};
    double w = lead;
    for (int k = n; k <= K; ++k) {
      acc += outer[static_cast<std::size_t>(k)] * w;
      w *= g * static_cast<double>(k + 1) / static_cast<double>(k + 1 - n);
    }
    c[static_cast<std::size_t>(n)] = acc;
    lead *= 1.0 - g;
  }
  return CoefficientSeries(std::move(c));
}

inline CoefficientSeries affine_compose(const CoefficientSeries& outer, DomainParams domain) {
  return affine_compose(outer, domain, outer.order());
}

/// Taylor coefficients of rotation * prod (z - z_i)/(1 - conj(z_i) z). Each
/// factor is applied as a multiplication by (z - z_i) followed by the
/// geometric division by (1 - conj(z_i) z). Coefficients are bounded by 1
/// and decay like max|z_i|^k times a polynomial in k.
inline CoefficientSeries blaschke_coefficients(std::span<const complex> zeros, complex rotation, int order) {
  if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
  for (const auto& z : zeros)
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("Blaschke zeros must lie strictly inside the unit disk");
  std::vector<complex> s(static_cast<std::size_t>(order) + 1);
  s[0] = rotation;
  for (const auto& a : zeros) {
    for (std::size_t k = s.size(); k-- > 0;) s[k] = (k > 0 ? s[k - 1] : complex{}) - a * s[k];
    const complex abar = std::conj(a);
    for (std::size_t k = 1; k < s.size(); ++k) s[k] += abar * s[k - 1];
  }
  return CoefficientSeries(std::move(s));
}

/// Smallest K such that sum_{k>K} |F_k| <= target for the Blaschke product F,
/// certified by Cauchy estimates on circles of radius 1 < R < 1/max|z_i|.
inline int blaschke_tail_order(std::span<const complex> zeros, double target) {
  if (zeros.empty()) return 0;
  double rho = 0.0;
  for (const auto& z : zeros) rho = std::max(rho, std::abs(z));
  if (rho == 0.0) return static_cast<int>(zeros.size());  // rotation * z^n
  constexpr double max_order = 1e7;
  double best = max_order;
  for (int j = 1; j < 64; ++j) {
    const double R = 1.0 + (1.0 / rho - 1.0) * j / 64.0;
    double log_bound = 0.0;
    for (const auto& z : zeros) {
      const double m = std::abs(z);
      log_bound += std::log((R + m) / (1.0 - m * R));
    }
    // sum_{k>K} M_R R^-k = M_R R^-(K+1) / (1 - 1/R)
    const double need = (log_bound - std::log(target) - std::log1p(-1.0 / R)) / std::log(R) - 1.0;
    best = std::min(best, std::max(0.0, std::ceil(need)));
  }
  if (best >= max_order) throw std::runtime_error("Blaschke zeros too close to the unit circle for a certified expansion");
  return static_cast<int>(best);
}

/// Coefficients of a bounded function up to the given order.
inline CoefficientSeries coefficients_of(const BoundedFunction& f, int order) {
  if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
  return std::visit(
      [order](const auto& fn) -> CoefficientSeries {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, Extremal>) {
          return extremal_coefficients(fn.domain, fn.a, order);
        } else if constexpr (std::is_same_v<T, BlaschkeComposed>) {
          if (fn.domain.gamma() == 0.0) return blaschke_coefficients(fn.zeros, fn.rotation, order);
          const int inner = std::max(order, blaschke_tail_order(fn.zeros, 1e-17));
          return affine_compose(blaschke_coefficients(fn.zeros, fn.rotation, inner), fn.domain, order);
        } else {
          return fn.series.resized(order);
        }
      },
      f);
}

/// Closed-form evaluation, independent of any coefficient expansion.
inline complex evaluate(const BoundedFunction& f, complex z) {
  return std::visit(
      [z](const auto& fn) -> complex {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, Extremal>) {
          const double g = fn.domain.gamma(), a = fn.a;
          return (a - g - (1.0 - g) * z) / (1.0 - a * g - a * (1.0 - g) * z);
        } else if constexpr (std::is_same_v<T, BlaschkeComposed>) {
          const double g = fn.domain.gamma();
          const complex w = (1.0 - g) * z + g;
          complex v = fn.rotation;
          for (const auto& a : fn.zeros) v *= (w - a) / (1.0 - std::conj(a) * w);
          return v;
        } else {
          return fn.series.evaluate(z);
        }
      },
      f);
}

// ---------------------------------------------------------------------------
// Coefficient bound |c_n| <= (1 - |c_0|^2) / (1 + gamma), n >= 1

struct LemmaReport {
  double max_violation = 0.0;  ///< max_n |c_n| - bound; <= 0 means the bound holds
  int worst_index = -1;        ///< -1 when the series has no n >= 1 terms
};

inline double coefficient_bound(complex c0, DomainParams domain) {
  return std::max(0.0, 1.0 - std::norm(c0)) / (1.0 + domain.gamma());
}

inline LemmaReport lemma_bound_report(const CoefficientSeries& series, DomainParams domain) {
  if (std::abs(series[0]) > 1.0 + 1e-12) throw std::domain_error("|c_0| > 1: not a member of B(Omega_gamma)");
  LemmaReport rep;
  if (series.order() == 0) return rep;
  const double bound = coefficient_bound(series[0], domain);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= series.order(); ++n) {
    const double v = std::abs(series[static_cast<std::size_t>(n)]) - bound;
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_index = n;
    }
  }
  return rep;
}

}  // namespace bohr
