#pragma once

/**
 * @file weights.hpp
 * @brief Weight sequences {phi_k(r)} for generalized Bohr sums.
 *
 * A family is a value object. phi0() and phi_k() give the individual weights,
 * tail_sum() the series sum_{k>=1} phi_k(r), and tail_beyond() a certified
 * upper bound on sum_{k>M} phi_k(r) used for truncation accounting.
 * Monomial families are evaluated in closed form; the Cesaro families are
 * summed with term recurrences and a ratio-test stopping rule.
 */

#include <bohr/recurrences.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

namespace bohr {

/// phi_0 = 1, phi_n = r^n for n >= N.
struct PowerTail { int N = 1; };
/// phi_{2n} = r^{2n}, odd weights vanish.
struct EvenPowers {};
/// phi_0 = 1, phi_{2n-1} = r^{2n-1}, even weights above 0 vanish.
struct OddPowers {};
/// phi_0 = 1, phi_n = (n + 1) r^n for n >= N.
struct LinearPlusOne { int N = 1; };
/// phi_0 = 1, phi_n = n r^n for n >= N.
struct Linear { int N = 1; };
/// phi_0 = 1, phi_n = n^2 r^n for n >= N.
struct Quadratic { int N = 1; };
/// Weights of the beta-Cesaro operator; beta > 0.
struct BetaCesaro { double beta = 1.0; };
/// Weights of the alpha-Cesaro operator; alpha > -1.
struct AlphaCesaro { double alpha = 0.0; };
/// Weights of the Bernardi operator, phi_n = r^{n+m} / (n + m + delta); m >= 1, delta > -m.
struct Bernardi {
  int m = 1;
  double delta = 0.0;
};

/// Caller-supplied weights. tail_beyond may be left empty, in which case
/// it is estimated as tail_sum minus the partial sum.
struct CustomWeights {
  std::string name = "custom";
  std::function<double(double)> phi0;
  std::function<double(int, double)> phi_k;
  std::function<double(double)> tail_sum;
  std::function<double(int, double)> tail_beyond;
};

using WeightFamily = std::variant<PowerTail, EvenPowers, OddPowers, LinearPlusOne, Linear, Quadratic,
                                  BetaCesaro, AlphaCesaro, Bernardi, CustomWeights>;

namespace detail {

inline constexpr long max_series_terms = 200'000'000;
inline constexpr double beta_log_branch = 1e-9;

// Sum of non-negative terms given t_0, ratio(j) = t_{j+1} / t_j, and
// bound(j) >= t_{i+1} / t_i for every i >= j.
template <class Ratio, class Bound>
double sum_positive_series(double first, Ratio ratio, Bound bound) {
  double sum = 0.0, term = first;
  for (long j = 0; j < max_series_terms; ++j) {
    sum += term;
    const double next = term * ratio(j);
    if (next <= 0.0) return sum;
    const double q = bound(j + 1);
    if (q < 1.0 && next <= 1e-16 * sum && next / (1.0 - q) <= 1e-16 * sum) return sum;
    term = next;
  }
  throw std::runtime_error("weight series did not converge within the term budget");
}

inline void check_r(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("weight argument r must lie in [0, 1)");
}

// sum_{n >= N} n^d r^n for d = 0, 1, 2 (N >= 1).
inline double power_moment_tail(int N, int d, double r) {
  const double rn = std::pow(r, N), s = 1.0 - r, n = N;
  switch (d) {
    case 0: return rn / s;
    case 1: return rn * (n * s + r) / (s * s);
    default:
      // Same polynomial as N^2 - (2N^2 - 2N - 1) r + (N - 1)^2 r^2.
      return rn * ((r + n) * (r + n) + r + n * n * r * r - 2.0 * n * r * (r + n)) / (s * s * s);
  }
}

inline bool beta_is_one(double beta) { return std::abs(beta - 1.0) < beta_log_branch; }

// sum_{n>=0} phi_n for the beta-Cesaro weights: ((1-r)^-beta - 1) / (beta r).
inline double beta_cesaro_total(double beta, double r) {
  if (r == 0.0) return 1.0;
  return std::expm1(-beta * std::log1p(-r)) / (beta * r);
}

// 1 / A_n^{alpha+1}
inline double inverse_pochhammer_ratio(int n, double alpha) {
  double v = 1.0;
  for (int i = 1; i <= n; ++i) v *= i / (alpha + 1.0 + i);
  return v;
}

template <class T>
inline constexpr bool is_threshold_family =
    std::is_same_v<T, PowerTail> || std::is_same_v<T, LinearPlusOne> || std::is_same_v<T, Linear> ||
    std::is_same_v<T, Quadratic>;

}  // namespace detail

inline void validate(const WeightFamily& family) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (detail::is_threshold_family<T>) {
          if (f.N < 1) throw std::invalid_argument("weight family threshold N must be >= 1");
        } else if constexpr (std::is_same_v<T, BetaCesaro>) {
          if (!(f.beta > 0.0)) throw std::invalid_argument("beta-Cesaro weights need beta > 0");
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          if (!(f.alpha > -1.0)) throw std::invalid_argument("alpha-Cesaro weights need alpha > -1");
        } else if constexpr (std::is_same_v<T, Bernardi>) {
          if (f.m < 1) throw std::invalid_argument("Bernardi weights need m >= 1");
          if (!(f.delta > -f.m)) throw std::invalid_argument("Bernardi weights need delta > -m");
        } else if constexpr (std::is_same_v<T, CustomWeights>) {
          if (!f.phi0 || !f.phi_k || !f.tail_sum)
            throw std::invalid_argument("custom weights need phi0, phi_k and tail_sum");
        }
      },
      family);
}

/// Command-line name of the family.
inline std::string family_name(const WeightFamily& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerTail>) return "power-tail";
        else if constexpr (std::is_same_v<T, EvenPowers>) return "even";
        else if constexpr (std::is_same_v<T, OddPowers>) return "odd";
        else if constexpr (std::is_same_v<T, LinearPlusOne>) return "linear-plus-one";
        else if constexpr (std::is_same_v<T, Linear>) return "linear";
        else if constexpr (std::is_same_v<T, Quadratic>) return "quadratic";
        else if constexpr (std::is_same_v<T, BetaCesaro>) return "beta-cesaro";
        else if constexpr (std::is_same_v<T, AlphaCesaro>) return "alpha-cesaro";
        else if constexpr (std::is_same_v<T, Bernardi>) return "bernardi";
        else return f.name;
      },
      family);
}

/// Parameters as "key=value" pairs joined by ';', empty for parameter-free families.
inline std::string family_params(const WeightFamily& family) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (detail::is_threshold_family<T>) os << "N=" << f.N;
        else if constexpr (std::is_same_v<T, BetaCesaro>) os << "beta=" << f.beta;
        else if constexpr (std::is_same_v<T, AlphaCesaro>) os << "alpha=" << f.alpha;
        else if constexpr (std::is_same_v<T, Bernardi>) os << "m=" << f.m << ";delta=" << f.delta;
      },
      family);
  return os.str();
}

inline std::string describe(const WeightFamily& family) {
  const auto params = family_params(family);
  return params.empty() ? family_name(family) : family_name(family) + "(" + params + ")";
}

/// True for the families that come from an integral operator.
inline bool is_operator_family(const WeightFamily& family) {
  return std::holds_alternative<BetaCesaro>(family) || std::holds_alternative<AlphaCesaro>(family) ||
         std::holds_alternative<Bernardi>(family);
}

inline double phi0(const WeightFamily& family, double r) {
  detail::check_r(r);
  validate(family);
  return std::visit(
      [r](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, BetaCesaro>) {
          if (r == 0.0) return 1.0;
          const double L = std::log1p(-r);
          if (detail::beta_is_one(f.beta)) return -L / r;
          return -std::expm1((1.0 - f.beta) * L) / ((1.0 - f.beta) * r);
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          // (1 + alpha) sum_k r^k / (k + alpha + 1)
          const double a = f.alpha;
          return detail::sum_positive_series(
              1.0, [=](long j) { return r * (j + a + 1.0) / (j + a + 2.0); }, [=](long) { return r; });
        } else if constexpr (std::is_same_v<T, Bernardi>) {
          return std::pow(r, f.m) / (f.m + f.delta);
        } else if constexpr (std::is_same_v<T, CustomWeights>) {
          return f.phi0(r);
        } else {
          return 1.0;
        }
      },
      family);
}

inline double phi_k(const WeightFamily& family, int k, double r) {
  if (k < 0) throw std::invalid_argument("weight index must be >= 0");
  if (k == 0) return phi0(family, r);
  detail::check_r(r);
  validate(family);
  return std::visit(
      [k, r](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        const double rk = std::pow(r, k);
        if constexpr (std::is_same_v<T, PowerTail>) {
          return k >= f.N ? rk : 0.0;
        } else if constexpr (std::is_same_v<T, EvenPowers>) {
          return k % 2 == 0 ? rk : 0.0;
        } else if constexpr (std::is_same_v<T, OddPowers>) {
          return k % 2 == 1 ? rk : 0.0;
        } else if constexpr (std::is_same_v<T, LinearPlusOne>) {
          return k >= f.N ? (k + 1.0) * rk : 0.0;
        } else if constexpr (std::is_same_v<T, Linear>) {
          return k >= f.N ? k * rk : 0.0;
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return k >= f.N ? double(k) * k * rk : 0.0;
        } else if constexpr (std::is_same_v<T, BetaCesaro>) {
          // sum_{j>=0} gamma_ratio(j, beta) r^{k+j} / (k + j + 1)
          const double b = f.beta;
          return detail::sum_positive_series(
              rk / (k + 1.0), [=](long j) { return r * (j + b) / (j + 1.0) * (k + j + 1.0) / (k + j + 2.0); },
              [=](long j) { return r * std::max(1.0, (j + b) / (j + 1.0)); });
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          // sum_{j>=0} A_j^alpha / A_{k+j}^{alpha+1} r^{k+j}
          const double a = f.alpha;
          return detail::sum_positive_series(
              rk * detail::inverse_pochhammer_ratio(k, a),
              [=](long j) { return r * (a + j + 1.0) / (j + 1.0) * (k + j + 1.0) / (a + k + j + 2.0); },
              [=](long j) { return r * std::max(1.0, (a + j + 1.0) / (j + 1.0)); });
        } else if constexpr (std::is_same_v<T, Bernardi>) {
          return std::pow(r, k + f.m) / (k + f.m + f.delta);
        } else {
          return f.phi_k(k, r);
        }
      },
      family);
}

namespace detail {

// sum_{n >= first} r^{n+m} / (n + m + delta)
inline double bernardi_tail(const Bernardi& f, int first, double r) {
  const double base = first + f.m + f.delta;
  return sum_positive_series(
      std::pow(r, first + f.m) / base, [=](long j) { return r * (base + j) / (base + j + 1.0); },
      [=](long) { return r; });
}

}  // namespace detail

/// sum_{k >= 1} phi_k(r).
inline double tail_sum(const WeightFamily& family, double r) {
  detail::check_r(r);
  validate(family);
  return std::visit(
      [r, &family](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerTail>) {
          return detail::power_moment_tail(f.N, 0, r);
        } else if constexpr (std::is_same_v<T, EvenPowers>) {
          return r * r / (1.0 - r * r);
        } else if constexpr (std::is_same_v<T, OddPowers>) {
          return r / (1.0 - r * r);
        } else if constexpr (std::is_same_v<T, LinearPlusOne>) {
          const double s = 1.0 - r;
          return std::pow(r, f.N) * (1.0 + f.N - f.N * r) / (s * s);
        } else if constexpr (std::is_same_v<T, Linear>) {
          return detail::power_moment_tail(f.N, 1, r);
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return detail::power_moment_tail(f.N, 2, r);
        } else if constexpr (std::is_same_v<T, BetaCesaro>) {
          return std::max(0.0, detail::beta_cesaro_total(f.beta, r) - phi0(family, r));
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          return std::max(0.0, 1.0 / (1.0 - r) - phi0(family, r));
        } else if constexpr (std::is_same_v<T, Bernardi>) {
          return detail::bernardi_tail(f, 1, r);
        } else {
          return f.tail_sum(r);
        }
      },
      family);
}

/// Certified upper bound on sum_{k > order} phi_k(r); exact for the monomial
/// and Bernardi families.
inline double tail_beyond(const WeightFamily& family, int order, double r) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  detail::check_r(r);
  validate(family);
  const int next = order + 1;
  return std::visit(
      [=, &family](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerTail>) {
          return detail::power_moment_tail(std::max(f.N, next), 0, r);
        } else if constexpr (std::is_same_v<T, EvenPowers>) {
          const int k0 = std::max(2, next + next % 2);
          return std::pow(r, k0) / (1.0 - r * r);
        } else if constexpr (std::is_same_v<T, OddPowers>) {
          const int k0 = std::max(1, next + 1 - next % 2);
          return std::pow(r, k0) / (1.0 - r * r);
        } else if constexpr (std::is_same_v<T, LinearPlusOne>) {
          const int n0 = std::max(f.N, next);
          return detail::power_moment_tail(n0, 1, r) + detail::power_moment_tail(n0, 0, r);
        } else if constexpr (std::is_same_v<T, Linear>) {
          return detail::power_moment_tail(std::max(f.N, next), 1, r);
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return detail::power_moment_tail(std::max(f.N, next), 2, r);
        } else if constexpr (std::is_same_v<T, BetaCesaro>) {
          // phi_n <= r^n (1-r)^-beta / (n + 1)
          return std::pow(1.0 - r, -f.beta) * std::pow(r, next) / ((next + 1.0) * (1.0 - r));
        } else if constexpr (std::is_same_v<T, AlphaCesaro>) {
          // phi_n <= r^n (1-r)^-(1+alpha) since A_k^{alpha+1} >= 1 grows with k
          return std::pow(r, next) * std::pow(1.0 - r, -(2.0 + f.alpha));
        } else if constexpr (std::is_same_v<T, Bernardi>) {
          return detail::bernardi_tail(f, next, r);
        } else {
          if (f.tail_beyond) return f.tail_beyond(order, r);
          double partial = 0.0;
          for (int k = 1; k <= order; ++k) partial += phi_k(family, k, r);
          const double total = f.tail_sum(r);
          return std::max(0.0, total - partial) + 1e-15 * total;
        }
      },
      family);
}

}  // namespace bohr
