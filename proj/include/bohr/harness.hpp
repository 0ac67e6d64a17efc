#pragma once

/**
 * @file harness.hpp
 * @brief Randomized verification suites for the weighted Bohr inequality and
 *        the sharpness of its radius.
 *
 * A suite is a list of cells, one per (family, gamma, p). Operator-derived
 * families (beta-Cesaro, alpha-Cesaro, Bernardi) are run at p = 1 only.
 * Random test functions are Blaschke products composed with the affine map
 * of Omega_gamma onto the unit disk; the set drawn for a given gamma depends
 * only on (seed, gamma index), so every cell with that gamma sees the same
 * functions and any offender can be replayed from its serialized zeros.
 */

#include <bohr/inequality.hpp>
#include <bohr/radius.hpp>
#include <bohr/series.hpp>
#include <bohr/weights.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace bohr {

struct SuiteConfig {
  std::uint64_t seed = 20211;
  int samples_per_cell = 500;
  std::vector<double> gamma_grid{0.0, 0.25, 0.5, 0.75};
  std::vector<double> p_grid{0.5, 1.0, 2.0};
  std::vector<WeightFamily> families;
  double tolerance = 1e-9;
  int grid_points = 32;
  int truncation_order = default_truncation_order;
  bool negative_controls = true;
};

/// Every built-in family, with the operator parameters used throughout the tests.
inline std::vector<WeightFamily> builtin_families() {
  return {PowerTail{1},      PowerTail{2},       EvenPowers{},     OddPowers{},      LinearPlusOne{1},
          Linear{1},         Quadratic{1},       BetaCesaro{0.5},  BetaCesaro{1.0},  BetaCesaro{2.0},
          AlphaCesaro{-0.5}, AlphaCesaro{0.0},   AlphaCesaro{1.0}, Bernardi{1, 1.0}, Bernardi{2, 0.5}};
}

inline SuiteConfig default_suite_config() {
  SuiteConfig c;
  c.families = builtin_families();
  return c;
}

inline void validate(const SuiteConfig& c) {
  if (c.samples_per_cell < 1) throw std::invalid_argument("samples_per_cell must be >= 1");
  if (!(c.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (c.grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  if (c.truncation_order < 1) throw std::invalid_argument("truncation_order must be >= 1");
  for (double g : c.gamma_grid) (void)DomainParams{g};
  for (double p : c.p_grid)
    if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("p_grid entries must lie in (0, 2]");
  for (const auto& f : c.families) validate(f);
}

// ---------------------------------------------------------------------------
// Random members of B(Omega_gamma)

/// mt19937_64 with a portable mapping to uniform doubles.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_([&] {
          std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
          return std::mt19937_64(seq);
        }()) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

inline constexpr int max_random_zeros = 5;
inline constexpr double random_zero_radius = 0.8;

/// 0-5 zeros uniform in |z| <= 0.8 and a uniform unimodular rotation.
inline BlaschkeComposed random_bounded_function(DomainParams domain, Rng& rng) {
  const auto n = static_cast<int>(rng.below(max_random_zeros + 1));
  std::vector<complex> zeros;
  zeros.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double rad = random_zero_radius * std::sqrt(rng.uniform());
    zeros.push_back(std::polar(rad, 2.0 * std::numbers::pi * rng.uniform()));
  }
  const complex rotation = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return BlaschkeComposed(domain, std::move(zeros), rotation);
}

/// sum_{k=1}^{terms} phi_k(r), using only the individual weight evaluators.
inline double brute_force_tail(const WeightFamily& family, double r, int terms) {
  if (terms < 1) throw std::invalid_argument("brute_force_tail needs terms >= 1");
  double s = 0.0;
  for (int k = 1; k <= terms; ++k) s += phi_k(family, k, r);
  return s;
}

/// Smallest truncation (up to doubling) whose certified remainder is below tol.
inline int certified_terms(const WeightFamily& family, double r, double tol) {
  int K = 16;
  while (tail_beyond(family, K, r) > tol) {
    if (K > (1 << 24)) throw std::runtime_error("weight tail does not reach the requested tolerance");
    K *= 2;
  }
  return K;
}

// ---------------------------------------------------------------------------
// Reports

struct ControlResult {
  std::string descriptor;
  double max_excess = 0.0;
  double membership_violation = 0.0;
  bool failed = false;  ///< a negative control is expected to fail
};

struct SharpnessEvidence {
  double r = 0.0;  ///< radius + offset
  double a = 0.0;
  double margin = 0.0;
  double first_order_prediction = 0.0;
  bool window_ok = false;
  std::vector<double> one_minus_a;
  std::vector<double> richardson_ratios;  ///< |margin - prediction| / (1 - a)
  std::vector<double> decrease_factors;   ///< consecutive ratio quotients, ~10 for an O((1-a)^2) remainder
  bool richardson_ok = false;
  std::string status;  ///< pass, fail or indeterminate
};

struct SuiteCell {
  WeightFamily family;
  double gamma = 0.0;
  double p = 1.0;
  std::optional<RadiusResult> radius;
  std::string skip_reason;
  int n_pass = 0;
  int n_fail = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  std::optional<BoundedFunction> worst_function;
  int worst_sample = -1;  ///< index into the random draws for this gamma, -1 for the fixed set
  std::vector<ControlResult> controls;
  std::optional<SharpnessEvidence> sharpness;

  bool skipped() const { return !skip_reason.empty(); }
};

struct SuiteReport {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<SuiteCell> cells;
  bool overall_pass = true;
  bool controls_detected = true;  ///< every negative control failed as expected
};

namespace detail {

// Runs fn(i) for i in [0, n) on all hardware threads; results are written by
// index so the outcome does not depend on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::vector<SuiteCell> enumerate_cells(const SuiteConfig& c) {
  std::vector<SuiteCell> cells;
  for (const auto& f : c.families)
    for (double g : c.gamma_grid) {
      const std::vector<double> ps = is_operator_family(f) ? std::vector<double>{1.0} : c.p_grid;
      for (double p : ps) {
        SuiteCell cell;
        cell.family = f;
        cell.gamma = g;
        cell.p = p;
        cells.push_back(std::move(cell));
      }
    }
  return cells;
}

struct Sample {
  BoundedFunction function;
  CoefficientSeries coefficients;
  int index;  // -1 for the fixed set
};

inline std::vector<Sample> fixed_samples(DomainParams d, int order) {
  std::vector<Sample> out;
  for (double c : {0.0, 1.0, -1.0, 0.5}) {
    Raw fn{CoefficientSeries{complex{c}}};
    out.push_back({fn, coefficients_of(fn, order), -1});
  }
  for (double a : {0.5, 0.9, 0.999}) {
    Extremal fn(d, a);
    out.push_back({fn, coefficients_of(fn, order), -1});
  }
  return out;
}

inline std::vector<Sample> random_samples(const SuiteConfig& c, std::size_t gamma_index) {
  const DomainParams d(c.gamma_grid[gamma_index]);
  Rng rng(c.seed, gamma_index);
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(c.samples_per_cell));
  for (int i = 0; i < c.samples_per_cell; ++i) {
    BoundedFunction fn = random_bounded_function(d, rng);
    auto coeffs = coefficients_of(fn, c.truncation_order);
    out.push_back({std::move(fn), std::move(coeffs), i});
  }
  return out;
}

inline std::optional<RadiusResult> locate_radius(SuiteCell& cell) {
  try {
    return minimal_root(RadiusQuery{cell.family, DomainParams(cell.gamma), cell.p});
  } catch (const no_root_error& e) {
    cell.skip_reason = e.what();
    return std::nullopt;
  }
}

inline void finish(SuiteReport& rep) {
  for (const auto& cell : rep.cells) {
    if (!cell.skipped() && cell.n_fail > 0) rep.overall_pass = false;
    for (const auto& ctl : cell.controls)
      if (!ctl.failed) rep.controls_detected = false;
  }
}

}  // namespace detail

/// Verifies the inequality up to the computed radius on every cell, for the
/// fixed set {constants 0, +-1, 0.5; extremal a = 0.5, 0.9, 0.999} and
/// samples_per_cell random functions. The negative control Raw{[0, 2]} is
/// reported separately and never affects overall_pass.
inline SuiteReport run_inequality_suite(const SuiteConfig& config) {
  validate(config);
  SuiteReport rep;
  rep.kind = "inequality";
  rep.seed = config.seed;
  rep.cells = detail::enumerate_cells(config);

  std::vector<std::vector<detail::Sample>> draws(config.gamma_grid.size());
  detail::parallel_for(draws.size(), [&](std::size_t gi) { draws[gi] = detail::random_samples(config, gi); });

  detail::parallel_for(rep.cells.size(), [&](std::size_t ci) {
    SuiteCell& cell = rep.cells[ci];
    cell.radius = detail::locate_radius(cell);
    if (!cell.radius) return;
    const DomainParams d(cell.gamma);
    const std::size_t gi = static_cast<std::size_t>(
        std::find(config.gamma_grid.begin(), config.gamma_grid.end(), cell.gamma) - config.gamma_grid.begin());
    const WeightTable table(cell.family, uniform_grid(cell.radius->radius, config.grid_points),
                            config.truncation_order);

    auto check = [&](const detail::Sample& s) {
      const auto r = verify_series(s.coefficients, table, d, cell.p, config.tolerance);
      (r.pass ? cell.n_pass : cell.n_fail) += 1;
      if (r.max_excess > cell.worst_excess) {
        cell.worst_excess = r.max_excess;
        cell.worst_function = s.function;
        cell.worst_sample = s.index;
      }
    };
    for (const auto& s : detail::fixed_samples(d, config.truncation_order)) check(s);
    for (const auto& s : draws[gi]) check(s);

    if (config.negative_controls) {
      const auto r = verify_series(CoefficientSeries{0.0, 2.0}, table, d, cell.p, config.tolerance);
      cell.controls.push_back({"coeffs:[0,2]", r.max_excess, r.membership_violation, !r.pass});
    }
  });
  detail::finish(rep);
  return rep;
}

struct SharpnessOptions {
  double offset = 0.01;
  double a = 1.0 - 1e-3;
  std::vector<double> richardson_steps{1e-2, 1e-3, 1e-4};
  double min_decrease = 7.0;
  double max_decrease = 13.0;
};

inline SharpnessEvidence sharpness_evidence(const RadiusQuery& q, double radius, const SharpnessOptions& opt = {}) {
  SharpnessEvidence ev;
  ev.r = radius + opt.offset;
  ev.a = opt.a;
  ev.window_ok = sharpness_window_check(q, radius, opt.offset);
  const auto main = extremal_margin(q.domain, opt.a, q.family, q.p, ev.r);
  ev.margin = main.margin;
  ev.first_order_prediction = main.first_order_prediction;
  for (double h : opt.richardson_steps) {
    const auto m = extremal_margin(q.domain, 1.0 - h, q.family, q.p, ev.r);
    ev.one_minus_a.push_back(h);
    ev.richardson_ratios.push_back(std::abs(m.margin - m.first_order_prediction) / h);
  }
  ev.richardson_ok = true;
  for (std::size_t i = 1; i < ev.richardson_ratios.size(); ++i) {
    const double f = ev.richardson_ratios[i - 1] / ev.richardson_ratios[i];
    ev.decrease_factors.push_back(f);
    if (!(f >= opt.min_decrease && f <= opt.max_decrease)) ev.richardson_ok = false;
  }
  if (!ev.window_ok)
    ev.status = "indeterminate";
  else
    ev.status = ev.margin > 0.0 && ev.richardson_ok ? "pass" : "fail";
  return ev;
}

/// Evaluates the extremal margin just beyond each computed radius. A cell
/// passes when the margin is positive and the first-order expansion error
/// shrinks quadratically; cells whose gap does not turn negative across the
/// window are reported as indeterminate.
inline SuiteReport run_sharpness_suite(const SuiteConfig& config, const SharpnessOptions& opt = {}) {
  validate(config);
  SuiteReport rep;
  rep.kind = "sharpness";
  rep.seed = config.seed;
  rep.cells = detail::enumerate_cells(config);
  detail::parallel_for(rep.cells.size(), [&](std::size_t ci) {
    SuiteCell& cell = rep.cells[ci];
    cell.radius = detail::locate_radius(cell);
    if (!cell.radius) return;
    const double radius = cell.radius->radius;
    if (!(radius + opt.offset < 1.0)) {
      cell.skip_reason = "radius too close to 1 for the sharpness window";
      return;
    }
    const double smallest_a = 1.0 - *std::max_element(opt.richardson_steps.begin(), opt.richardson_steps.end());
    if (!(cell.gamma < std::min(opt.a, smallest_a))) {
      cell.skip_reason = "extremal parameter a must exceed gamma";
      return;
    }
    const RadiusQuery q{cell.family, DomainParams(cell.gamma), cell.p};
    cell.sharpness = sharpness_evidence(q, radius, opt);
    cell.worst_excess = cell.sharpness->margin;
    cell.worst_function = Extremal(q.domain, opt.a);
    if (cell.sharpness->status == "pass") cell.n_pass = 1;
    else if (cell.sharpness->status == "fail") cell.n_fail = 1;
  });
  detail::finish(rep);
  return rep;
}

}  // namespace bohr
