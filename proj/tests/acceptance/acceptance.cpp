// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <bohr/bohr.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace bohr;

namespace {

constexpr double radius_tol = 1e-10;
constexpr double anchor_runtime_ms = 1.0;
constexpr double bound_tol = 1e-10;
constexpr double bound_equality_tol = 1e-12;
constexpr int bound_members = 10'000;
constexpr double operator_form_tol = 1e-8;
constexpr double operator_bound_tol = 1e-10;
constexpr double pochhammer_rel_tol = 1e-12;
constexpr double row_sum_tol = 1e-12;
constexpr double p_bound_slack = -1e-15;
constexpr double equation_residual_tol = 1e-9;
constexpr double alpha_beta_tol = 1e-10;
constexpr double beta_continuity_tol = 1e-5;
constexpr double tail_tol = 1e-10;
constexpr double richardson_min = 7.0;
constexpr double richardson_max = 13.0;
constexpr int suite_samples = 500;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

double radius(const WeightFamily& f, double g, double p) { return minimal_root({f, DomainParams(g), p}).radius; }

Outcome classical_anchor() {
  (void)radius(PowerTail{1}, 0.0, 1.0);
  std::vector<double> ms;
  double r = 0.0;
  for (int i = 0; i < 11; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    r = radius(PowerTail{1}, 0.0, 1.0);
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  const double err = std::abs(r - 1.0 / 3.0);
  return {err <= radius_tol && ms[5] < anchor_runtime_ms,
          "|R - 1/3| = " + fmt("%.2e", err) + ", median runtime " + fmt("%.3f", ms[5]) + " ms"};
}

Outcome power_tail_family() {
  double worst = 0.0;
  for (int i = 0; i <= 9; ++i) {
    const double g = 0.1 * i;
    worst = std::max(worst, std::abs(radius(PowerTail{1}, g, 1.0) - (1 + g) / (3 + g)));
  }
  return {worst <= radius_tol, "max |R - (1+g)/(3+g)| = " + fmt("%.2e", worst) + " over 10 gammas"};
}

Outcome quadratic_closed_forms() {
  double worst_even = 0.0, worst_odd = 0.0;
  int cells = 0;
  for (int i = 0; i <= 9; ++i)
    for (int j = 1; j <= 8; ++j) {
      const double g = 0.1 * i, p = 0.25 * j, c = p * (1 + g);
      worst_even = std::max(worst_even, std::abs(radius(EvenPowers{}, g, p) - std::sqrt(c / (2 + c))));
      worst_odd = std::max(worst_odd, std::abs(radius(OddPowers{}, g, p) - (std::sqrt(1 + c * c) - 1) / c));
      ++cells;
    }
  return {worst_even <= radius_tol && worst_odd <= radius_tol,
          "even " + fmt("%.2e", worst_even) + ", odd " + fmt("%.2e", worst_odd) + " over " + std::to_string(cells) +
              " (gamma, p) cells"};
}

Outcome inequality_suite() {
  SuiteConfig c = default_suite_config();
  c.samples_per_cell = suite_samples;
  const auto rep = run_inequality_suite(c);
  int cells = 0, skipped = 0, short_cells = 0;
  double worst = -1.0;
  for (const auto& cell : rep.cells) {
    ++cells;
    if (cell.skipped()) ++skipped;
    if (cell.n_pass + cell.n_fail < suite_samples) ++short_cells;
    worst = std::max(worst, cell.worst_excess);
  }
  return {rep.overall_pass && rep.controls_detected && skipped == 0 && short_cells == 0,
          std::to_string(cells) + " cells x " + std::to_string(suite_samples) + " random members, worst excess " +
              fmt("%.2e", worst) + ", controls " + (rep.controls_detected ? "flagged" : "MISSED") +
              ", skipped " + std::to_string(skipped)};
}

Outcome sharpness_suite() {
  SharpnessOptions opt;
  opt.min_decrease = richardson_min;
  opt.max_decrease = richardson_max;
  const auto rep = run_sharpness_suite(default_suite_config(), opt);
  int checked = 0, passed = 0, unexplained_skips = 0;
  double lo = 1e300, hi = 0.0;
  for (const auto& cell : rep.cells) {
    if (cell.skipped()) {
      if (cell.radius && cell.radius->radius + opt.offset < 1.0 && cell.gamma < 1.0 - opt.richardson_steps.front())
        ++unexplained_skips;
      continue;
    }
    ++checked;
    if (cell.sharpness->status == "pass") ++passed;
    for (double f : cell.sharpness->decrease_factors) lo = std::min(lo, f), hi = std::max(hi, f);
  }
  return {rep.overall_pass && passed == checked && unexplained_skips == 0 && checked > 0,
          std::to_string(passed) + "/" + std::to_string(checked) + " cells with positive margin, decrease factors in [" +
              fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]"};
}

Outcome coefficient_bound_suite() {
  const std::vector<double> gammas{0.0, 0.25, 0.5, 0.75};
  std::vector<Rng> rngs;
  for (std::size_t k = 0; k < gammas.size(); ++k) rngs.emplace_back(6021, k);
  double worst = -1.0;
  for (int i = 0; i < bound_members; ++i) {
    const std::size_t gi = static_cast<std::size_t>(i) % gammas.size();
    const DomainParams d(gammas[gi]);
    const auto f = random_bounded_function(d, rngs[gi]);
    worst = std::max(worst, lemma_bound_report(coefficients_of(f, 64), d).max_violation);
  }
  double eq = 0.0;
  for (double g : gammas)
    for (double a : {0.76, 0.9, 0.99, 0.999999}) {
      const auto c = extremal_coefficients(DomainParams(g), a, 1);
      eq = std::max(eq, std::abs(std::abs(c[1]) - coefficient_bound(c[0], DomainParams(g))));
    }
  return {worst <= bound_tol && eq <= bound_equality_tol,
          std::to_string(bound_members) + " members, max |a_n| - bound = " + fmt("%.2e", worst) +
              ", extremal equality gap " + fmt("%.2e", eq)};
}

Outcome operator_oracle() {
  const std::vector<OperatorSpec> specs{BetaCesaro{0.5}, BetaCesaro{1.0},  BetaCesaro{2.0},  AlphaCesaro{-0.5},
                                        AlphaCesaro{0.0}, AlphaCesaro{1.0}, Bernardi{1, 1.0}, Bernardi{2, 0.5}};
  double form = 0.0, bound = 0.0;
  for (const auto& s : specs) {
    const auto* bern = std::get_if<Bernardi>(&s);
    const int m = bern ? bern->m : 0;
    std::vector<complex> zeros{{0.6, -0.2}, {-0.35, 0.45}, {0.1, 0.7}};
    for (int i = 0; i < m; ++i) zeros.push_back(0.0);
    const BlaschkeComposed f(DomainParams(0.0), zeros, std::polar(1.0, 2.1));
    const auto out = apply_coefficient_form(s, coefficients_of(f, 800));
    for (int i = 0; i < 10; ++i) {
      const complex z = std::polar(0.085 * (i + 1), 0.7 * i + 0.3);
      const complex v = apply_integral_form(s, [&](complex w) { return evaluate(f, w); }, z);
      form = std::max(form, std::abs(out.evaluate(z) - v));
    }
    // f = z^m (the constant 1 for the Cesaro operators) attains the bound on the positive axis.
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const complex v = apply_integral_form(s, [m](complex w) { return std::pow(w, m); }, complex{r, 0.0});
      bound = std::max(bound, std::abs(v - operator_bound(s, r)));
    }
  }
  return {form <= operator_form_tol && bound <= operator_bound_tol,
          "coefficient vs integral " + fmt("%.2e", form) + ", unit-function integral vs bound " + fmt("%.2e", bound)};
}

Outcome algebraic_identities() {
  double poch = 0.0;
  for (double a : {-0.5, 0.0, 1.0, 2.5})
    for (int n = 0; n <= 50; ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += pochhammer_ratio(k, a);
      const double ref = pochhammer_ratio(n, a + 1.0);
      poch = std::max(poch, std::abs(s - ref) / ref);
    }
  double rows = 0.0;
  const CoefficientSeries ones(std::vector<complex>(51, 1.0));
  for (const OperatorSpec& s : {OperatorSpec{AlphaCesaro{-0.5}}, OperatorSpec{AlphaCesaro{0.0}},
                                OperatorSpec{AlphaCesaro{1.0}}, OperatorSpec{AlphaCesaro{2.5}},
                                OperatorSpec{BetaCesaro{1.0}}}) {
    const auto out = apply_coefficient_form(s, ones);
    for (const auto& c : out.coefficients()) rows = std::max(rows, std::abs(c - 1.0));
  }
  double slack = 1.0;
  for (int i = 0; i < 1000; ++i)
    for (int j = 1; j <= 20; ++j) slack = std::min(slack, p_bound_check(i / 1000.0, 0.1 * j));
  return {poch <= pochhammer_rel_tol && rows <= row_sum_tol && slack >= p_bound_slack,
          "Pochhammer sums " + fmt("%.2e", poch) + " rel, Cesaro rows " + fmt("%.2e", rows) +
              ", min (1-x^p)/(1-x^2) - p/2 = " + fmt("%.2e", slack)};
}

Outcome operator_radii() {
  const auto b1 = operator_bohr_radius(BetaCesaro{1.0}, DomainParams(0.0));
  const double x = b1.result.radius;
  const double eq = 2 * x - 3 * (1 - x) * std::log(1 / (1 - x));
  const double a0 = operator_bohr_radius(AlphaCesaro{0.0}, DomainParams(0.0)).result.radius;
  const double up = operator_bohr_radius(BetaCesaro{1.0 + 1e-6}, DomainParams(0.0)).result.radius;
  const double dn = operator_bohr_radius(BetaCesaro{1.0 - 1e-6}, DomainParams(0.0)).result.radius;
  const double cont = std::max(std::abs(up - x), std::abs(dn - x));
  return {x > 0.5 && x < 0.55 && std::abs(eq) <= equation_residual_tol && std::abs(a0 - x) <= alpha_beta_tol &&
              cont <= beta_continuity_tol,
          "R = " + fmt("%.12f", x) + ", equation residual " + fmt("%.2e", eq) + ", |R_alpha0 - R| = " +
              fmt("%.2e", std::abs(a0 - x)) + ", beta = 1 +- 1e-6 shift " + fmt("%.2e", cont)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (const auto& f : builtin_families())
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i;
      const double closed = tail_sum(f, r);
      const double brute = brute_force_tail(f, r, certified_terms(f, r, 1e-13));
      worst = std::max(worst, std::abs(closed - brute) / std::max(1.0, closed));
    }
  // Closed form of sum_{n>=N} n^2 r^n against direct summation.
  double quadratic = 0.0;
  for (int N : {1, 2, 3, 7})
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i, n = N;
      const double formula =
          std::pow(r, N) * (n * n - (2 * n * n - 2 * n - 1) * r + (n - 1) * (n - 1) * r * r) / std::pow(1 - r, 3);
      const double brute = brute_force_tail(Quadratic{N}, r, certified_terms(Quadratic{N}, r, 1e-13));
      quadratic = std::max(quadratic, std::abs(formula - brute) / std::max(1.0, brute));
    }
  return {worst <= tail_tol && quadratic <= tail_tol,
          "closed vs brute-force tails " + fmt("%.2e", worst) + " (relative), n^2 tail closed form " +
              fmt("%.2e", quadratic)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"classical anchor R = 1/3", classical_anchor},
      {"power-tail radius (1+g)/(3+g)", power_tail_family},
      {"even/odd quadratic closed forms", quadratic_closed_forms},
      {"inequality suite", inequality_suite},
      {"sharpness suite", sharpness_suite},
      {"coefficient bound suite", coefficient_bound_suite},
      {"operator coefficient/integral oracle", operator_oracle},
      {"algebraic identities", algebraic_identities},
      {"operator radii consistency", operator_radii},
      {"closed-form vs brute-force tails", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s  %2zu  %-38s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
