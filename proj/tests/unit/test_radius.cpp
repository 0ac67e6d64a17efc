#include <bohr/radius.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace bohr;

namespace {

double R(const WeightFamily& f, double g, double p = 1.0) { return minimal_root({f, DomainParams(g), p}).radius; }

// Independent root of a scalar equation by plain bisection.
template <class F>
double bisect(F f, double lo, double hi) {
  const bool lo_pos = f(lo) > 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0) == lo_pos ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Radius, ClassicalOneThird) { EXPECT_NEAR(R(PowerTail{1}, 0.0), 1.0 / 3.0, 1e-10); }

TEST(Radius, PowerTailClosedFormAcrossGamma) {
  for (int i = 0; i <= 9; ++i) {
    const double g = 0.1 * i;
    EXPECT_NEAR(R(PowerTail{1}, g), (1 + g) / (3 + g), 1e-10) << "gamma " << g;
  }
}

TEST(Radius, PowerTailWithExponent) {
  // 2x^N = p(1+gamma)(1-x)
  for (int N : {1, 2, 4})
    for (double g : {0.0, 0.5})
      for (double p : {0.5, 1.0, 2.0}) {
        const double ref = bisect([&](double x) { return p * (1 + g) * (1 - x) - 2 * std::pow(x, N); }, 0.0, 1.0);
        EXPECT_NEAR(R(PowerTail{N}, g, p), ref, 1e-10);
      }
  EXPECT_NEAR(R(PowerTail{2}, 0.0), 0.5, 1e-10);
}

TEST(Radius, EvenAndOddClosedForms) {
  for (double g : {0.0, 0.25, 0.5, 0.75})
    for (double p : {0.5, 1.0, 2.0}) {
      const double c = p * (1 + g);
      EXPECT_NEAR(R(EvenPowers{}, g, p), std::sqrt(c / (2 + c)), 1e-10);
      EXPECT_NEAR(R(OddPowers{}, g, p), (-1.0 + std::sqrt(1.0 + c * c)) / c, 1e-10);
    }
  EXPECT_NEAR(R(OddPowers{}, 0.0), std::sqrt(2.0) - 1.0, 1e-10);
  EXPECT_NEAR(R(EvenPowers{}, 0.0), 1.0 / std::sqrt(3.0), 1e-10);
}

TEST(Radius, FrozenOracles) {
  EXPECT_NEAR(R(LinearPlusOne{1}, 0.0), 0.18350341907227396727, 1e-10);  // 1 - sqrt(2/3)
  EXPECT_NEAR(R(Linear{1}, 0.0), 0.26794919243112270647, 1e-10);        // 2 - sqrt(3)
  EXPECT_NEAR(R(Quadratic{1}, 0.0), 0.20678349452781558795, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{0.5}, 0.0), 0.55555555555555555556, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{0.5}, 0.3), 0.63269054178145086989, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{0.5}, 0.6), 0.69135802469135802088, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{1.0}, 0.0), 0.53358923391999484675, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{2.0}, 0.0), 0.5, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{2.0}, 0.3), 1.3 / 2.3, 1e-10);
  EXPECT_NEAR(R(BetaCesaro{2.0}, 0.6), 1.6 / 2.6, 1e-10);
  EXPECT_NEAR(R(AlphaCesaro{-0.5}, 0.0), 0.44913812571595316618, 1e-10);
  EXPECT_NEAR(R(AlphaCesaro{0.0}, 0.0), 0.53358923391999484675, 1e-10);
  EXPECT_NEAR(R(AlphaCesaro{1.0}, 0.0), 0.64500745133458439823, 1e-10);
  EXPECT_NEAR(R(Bernardi{1, 1.0}, 0.0), 0.47427796274246441984, 1e-10);
  EXPECT_NEAR(R(Bernardi{2, 0.5}, 0.0), 0.44921559392939016669, 1e-10);
}

TEST(Radius, BetaHalfClosedForm) {
  for (double g : {0.0, 0.2, 0.45, 0.8}) EXPECT_NEAR(R(BetaCesaro{0.5}, g), 1.0 - 4.0 / ((3 + g) * (3 + g)), 1e-10);
}

TEST(Radius, ResultIsConsistent) {
  const RadiusQuery q{Quadratic{2}, DomainParams(0.4), 1.5};
  const auto res = minimal_root(q);
  EXPECT_LE(res.bracket.lo, res.radius);
  EXPECT_GE(res.bracket.hi, res.radius);
  EXPECT_LE(res.bracket.hi - res.bracket.lo, 1e-12);
  EXPECT_GT(gap(q, res.bracket.lo), 0.0);
  EXPECT_LE(gap(q, res.bracket.hi), 0.0);
  EXPECT_TRUE(res.sharp_window_ok);
  EXPECT_GT(res.evaluations, 0);
  EXPECT_NEAR(res.residual, gap(q, res.radius), 0.0);
}

TEST(Radius, IncreasesWithGammaAndP) {
  for (const WeightFamily& f : {WeightFamily{PowerTail{1}}, WeightFamily{Linear{1}}, WeightFamily{BetaCesaro{1.0}}}) {
    double prev = 0.0;
    for (double g : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      const double r = R(f, g);
      EXPECT_GT(r, prev);
      prev = r;
    }
    EXPECT_LT(R(f, 0.3, 0.5), R(f, 0.3, 1.0));
    EXPECT_LT(R(f, 0.3, 1.0), R(f, 0.3, 2.0));
  }
}

TEST(Radius, GapIsPositiveBelowTheRoot) {
  const RadiusQuery q{OddPowers{}, DomainParams(0.25), 1.0};
  const double r = minimal_root(q).radius;
  for (int i = 0; i < 100; ++i) EXPECT_GT(gap(q, r * i / 100.0), 0.0);
}

TEST(Radius, TighterToleranceNarrowsTheBracket) {
  const RadiusQuery q{PowerTail{1}, DomainParams(0.0), 1.0};
  const auto coarse = minimal_root(q, 1e-6);
  const auto fine = minimal_root(q, 1e-13);
  EXPECT_LE(coarse.bracket.hi - coarse.bracket.lo, 1e-6);
  EXPECT_NEAR(coarse.radius, 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(fine.radius, 1.0 / 3.0, 1e-12);
}

TEST(Radius, BernardiStartsAtZeroButStillHasAPositiveRoot) {
  // phi_0 = x^m/(m+delta) vanishes at 0; the fine scan handles the start.
  const double r = R(Bernardi{3, 0.0}, 0.0);
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, 1.0);
}

TEST(Radius, RejectsBadQueries) {
  EXPECT_THROW(minimal_root({PowerTail{1}, DomainParams(0.0), 0.0}), std::invalid_argument);
  EXPECT_THROW(minimal_root({PowerTail{1}, DomainParams(0.0), 2.5}), std::invalid_argument);
  EXPECT_THROW(minimal_root({PowerTail{0}, DomainParams(0.0), 1.0}), std::invalid_argument);
  EXPECT_THROW(minimal_root({PowerTail{1}, DomainParams(0.0), 1.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(sharpness_window_check({PowerTail{1}, DomainParams(0.0), 1.0}, 0.99, 0.02), std::domain_error);
}

TEST(Radius, NoRootWhenGapCannotTurnNegative) {
  CustomWeights tiny;
  tiny.name = "vanishing-tail";
  tiny.phi0 = [](double) { return 1.0; };
  tiny.phi_k = [](int k, double r) { return k == 1 ? 0.1 * r : 0.0; };
  tiny.tail_sum = [](double r) { return 0.1 * r; };
  EXPECT_THROW(minimal_root({tiny, DomainParams(0.0), 1.0}), no_root_error);

  CustomWeights dead;
  dead.name = "dead-start";
  dead.phi0 = [](double) { return 0.0; };
  dead.phi_k = [](int, double) { return 0.0; };
  dead.tail_sum = [](double) { return 0.0; };
  EXPECT_THROW(minimal_root({dead, DomainParams(0.0), 1.0}), no_root_error);

  // The root sits at 1 - exp(-5e5), past anything representable.
  EXPECT_THROW(minimal_root({Bernardi{1, -0.999999}, DomainParams(0.0), 1.0}), no_root_error);
}

TEST(Radius, WindowFailsBeforeTheRoot) {
  const RadiusQuery q{PowerTail{1}, DomainParams(0.0), 1.0};
  EXPECT_TRUE(sharpness_window_check(q, 1.0 / 3.0, 0.01));
  EXPECT_FALSE(sharpness_window_check(q, 0.3, 0.01));
}
