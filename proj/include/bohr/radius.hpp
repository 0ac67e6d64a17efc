#pragma once

/**
 * @file radius.hpp
 * @brief Sharp Bohr radius as the minimal positive root of
 *        (1 + gamma) phi_0(x) = (2/p) sum_{k>=1} phi_k(x).
 *
 * The root is located as the first positive-to-nonpositive sign change of the
 * gap function on a uniform scan, then refined by bisection.
 */

#include <bohr/series.hpp>
#include <bohr/weights.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace bohr {

struct RadiusQuery {
  WeightFamily family;
  DomainParams domain;
  double p = 1.0;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct RadiusResult {
  double radius = 0.0;
  Bracket bracket;
  double residual = 0.0;  ///< gap at the radius
  bool sharp_window_ok = false;
  long evaluations = 0;
};

/// The gap has no sign change on the part of [0, 1) where it can be evaluated.
class no_root_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootOptions {
  double tol = 1e-12;
  double scan_step = 1e-3;
  double fine_step = 1e-6;
  double upper = 1.0 - 1e-9;
  double window = 0.01;  ///< width of the sharpness window reported with the result
};

inline void validate(const RadiusQuery& q) {
  if (!(q.p > 0.0 && q.p <= 2.0)) throw std::invalid_argument("p must lie in (0, 2]");
  validate(q.family);
}

/// (1 + gamma) phi_0(x) - (2/p) sum_{k>=1} phi_k(x).
inline double gap(const RadiusQuery& q, double x) {
  validate(q);
  return (1.0 + q.domain.gamma()) * phi0(q.family, x) - (2.0 / q.p) * tail_sum(q.family, x);
}

/// True iff the gap is strictly negative at 32 interior points of (radius, radius + epsilon).
inline bool sharpness_window_check(const RadiusQuery& q, double radius, double epsilon) {
  if (!(epsilon > 0.0) || !(radius >= 0.0) || !(radius + epsilon < 1.0))
    throw std::domain_error("sharpness window must lie inside [0, 1)");
  constexpr int samples = 32;
  for (int i = 1; i <= samples; ++i)
    if (!(gap(q, radius + epsilon * i / (samples + 1)) < 0.0)) return false;
  return true;
}

inline RadiusResult minimal_root(const RadiusQuery& q, const RootOptions& opt) {
  validate(q);
  if (!(opt.tol > 0.0)) throw std::invalid_argument("root tolerance must be > 0");
  long evals = 0;
  auto g = [&](double x) {
    ++evals;
    return gap(q, x);
  };

  double lo = 0.0, hi = 0.0;
  bool found = false;
  const double first = opt.scan_step;
  if (!(g(first) > 0.0)) {
    // The gap may start at zero (Bernardi weights carry a factor r^m); look closer to 0.
    double prev = 0.0;
    for (long i = 1;; ++i) {
      const double x = std::min(first, i * opt.fine_step);
      if (!(g(x) > 0.0)) {
        if (prev == 0.0) throw no_root_error("gap is non-positive immediately to the right of 0");
        lo = prev, hi = x, found = true;
        break;
      }
      prev = x;
    }
  } else {
    double prev = first;
    for (long i = 2;; ++i) {
      const double x = std::min(opt.upper, i * opt.scan_step);
      double gx = 0.0;
      try {
        gx = g(x);
      } catch (const std::runtime_error& e) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "gap stays positive up to r = %.10g and cannot be evaluated at r = %.10g", prev, x);
        throw no_root_error(std::string(msg) + " (" + e.what() + ")");
      }
      if (!(gx > 0.0)) {
        lo = prev, hi = x, found = true;
        break;
      }
      if (x >= opt.upper) break;
      prev = x;
    }
  }
  if (!found) throw no_root_error("gap stays positive on [0, 1): no finite Bohr radius for " + describe(q.family));

  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }

  RadiusResult res;
  res.bracket = {lo, hi};
  res.radius = 0.5 * (lo + hi);
  res.residual = g(res.radius);
  const double eps = std::min(opt.window, 0.5 * (1.0 - res.radius));
  res.sharp_window_ok = sharpness_window_check(q, res.radius, eps);
  res.evaluations = evals + 32;
  return res;
}

inline RadiusResult minimal_root(const RadiusQuery& q, double tol = 1e-12) {
  RootOptions opt;
  opt.tol = tol;
  return minimal_root(q, opt);
}

}  // namespace bohr
