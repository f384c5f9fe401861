#include <gtest/gtest.h>

#include <random>

#include "golden.hpp"
#include "tanbound/bounds.hpp"
#include "tanbound/core/error.hpp"
#include "tanbound/oracle.hpp"

using namespace tanbound;
using namespace tanbound::oracle;
using functions::Fn;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

// |a - b| <= 10^-digits * max(1, |a|)
bool agree(const Rational& a, const Rational& b, int digits) {
  Rational scale = a.abs() > Rational(1) ? a.abs() : Rational(1);
  return (a - b).abs() <= scale / Rational(10).pow(digits);
}

PiLaurent series_coeff(const PowerSeries& s, int k) { return s.coeff(k); }

}  // namespace

TEST(PiDigits, KnownPrefixes) {
  EXPECT_EQ(pi_digits(2).str(), "3.14");
  EXPECT_EQ(pi_digits(10).str(), "3.1415926536");
  EXPECT_EQ(pi_digits(50).str(), "3.14159265358979323846264338327950288419716939937511");
  const std::string long_pi = pi_digits(1000).str();
  EXPECT_EQ(long_pi.size(), 1002u);
  EXPECT_EQ(long_pi.substr(long_pi.size() - 10), "2164201989");
}

TEST(PiDigits, ContainedInTheBinaryEnclosure) {
  const Rational pi50 = pi_digits(50).to_rational();
  EXPECT_TRUE(PiEnclosure::standard().value().contains(pi50));
  EXPECT_THROW(pi_digits(0), std::invalid_argument);
  EXPECT_THROW(pi_digits(1001), std::invalid_argument);
}

TEST(PiBalls, IndependentFormulasOverlap) {
  const Ball a = pi_machin(400);
  const Ball b = pi_gauss(400);
  EXPECT_LE(a.lower(), b.upper());
  EXPECT_LE(b.lower(), a.upper());
  EXPECT_LT(a.upper() - a.lower(), Rational(1) / Rational(10).pow(100));
}

TEST(ReferenceValue, Examples) {
  EXPECT_EQ(reference_value(Fn::Tan, Rational(1), 20).str(), "1.5574077246549022305");
  EXPECT_TRUE(agree(reference_value(Fn::Tan, Rational(1)).to_rational(), R(golden::kTan1), 30));
  EXPECT_TRUE(agree(reference_value(Fn::Sin, R("0.5")).to_rational(), R(golden::kSinHalf), 30));
  EXPECT_TRUE(agree(reference_value(Fn::Cos, R("1.5")).to_rational(), R(golden::kCos1p5), 28));
  EXPECT_TRUE(agree(reference_value(Fn::Arctan, Rational(10)).to_rational(), R(golden::kAtan10), 28));
  EXPECT_TRUE(agree(reference_value(Fn::TanxOverX, R("1.5")).to_rational(), R(golden::kTanxOverX1p5), 24));
  EXPECT_TRUE(agree(reference_value(Fn::TanxOverX, R("0.000001")).to_rational(), R(golden::kTanxOverXAt1em6), 29));
  EXPECT_TRUE(agree(reference_value(Fn::TanxOverX, R("1e-9")).to_rational(), R(golden::kTanxOverXAt1em9), 22));
  EXPECT_EQ(reference_value(Fn::TanxOverX, Rational(0)).to_rational(), Rational(1));
}

TEST(ReferenceValue, ArctanOneIsQuarterPi) {
  const Rational quarter = pi_digits(49).to_rational() / Rational(4);
  EXPECT_TRUE(agree(reference_value(Fn::Arctan, Rational(1)).to_rational(), quarter, 48));
}

TEST(ReferenceValue, PoleIsRefused) {
  const Rational near = pi_digits(60).to_rational() / Rational(2);
  try {
    reference_value(Fn::Tan, near, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleProximity);
  }
}

TEST(ReferenceValue, ExactValues) {
  EXPECT_TRUE(agree(reference_value(PiLaurent::pi(2)).to_rational(), R(golden::kPiSquared), 36));
  EXPECT_TRUE(
      agree(reference_value(bounds::formula(bounds::BoundKind::BsLower).tan_over_x_numerator(), Rational(1)).to_rational(),
            Rational(8), 40));
}

TEST(ReferenceValue, SelfConsistentAcrossPrecisions) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const Rational x(mpz_class(static_cast<long>(1 + rng() % 15700)), mpz_class(10000));
    for (Fn fn : {Fn::Sin, Fn::Cos, Fn::Tan, Fn::Arctan, Fn::TanxOverX}) {
      const Rational a = reference_value(fn, x, 30).to_rational();
      const Rational b = reference_value(fn, x, 60).to_rational();
      EXPECT_TRUE(agree(a, b, 28)) << functions::to_string(fn) << " at " << x.str();
    }
  }
}

TEST(ReferenceValue, InsideFunctionEnclosures) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(1e-3, 1.5707);
  for (int i = 0; i < 100; ++i) {
    const double xd = dist(rng);
    const Rational x = Rational::from_double(xd);
    for (Fn fn : {Fn::Sin, Fn::Cos, Fn::Tan, Fn::Arctan, Fn::TanxOverX}) {
      const Interval e = functions::enclosure(fn, {Interval(xd)});
      EXPECT_TRUE(e.contains(reference_value(fn, x).to_rational())) << functions::to_string(fn) << " at " << xd;
    }
  }
}

TEST(RoundBall, RefusesWideBalls) {
  const Ball wide(mpz_class(1000), mpz_class(500), 10);
  EXPECT_THROW(round_ball(wide, 30), Error);
}

TEST(Expansions, AtPiHalfMatchesBoundConstants) {
  const PowerSeries s = expansion_at_pi_half(3);
  EXPECT_EQ(series_coeff(s, 0), PiLaurent(8));
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(series_coeff(s, k), bounds::shift_coefficient(k)) << k;
  EXPECT_EQ(series_coeff(s, 1).str(), "8/π");
  EXPECT_EQ(series_coeff(s, 2).str(), "16/π² − 8/3");
  EXPECT_EQ(series_coeff(s, 3).str(), "32/π³ − 8/(3π)");
}

TEST(Expansions, AtZeroMatchesNearZeroNumerator) {
  const PowerSeries s = expansion_at_zero(4);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(series_coeff(s, k), bounds::thm2_numerator().coeff(k)) << k;
  EXPECT_EQ(series_coeff(s, 0).str(), "π²");
  EXPECT_EQ(series_coeff(s, 2).str(), "π²/3 − 4");
  EXPECT_EQ(series_coeff(s, 4).str(), "2π²/15 − 4/3");
  EXPECT_TRUE(series_coeff(s, 1).is_zero());
  EXPECT_TRUE(series_coeff(s, 3).is_zero());
}

TEST(Expansions, HighOrderIsConsistentWithLowOrder) {
  const PowerSeries hi = expansion_at_pi_half(kMaxExpansionOrder);
  const PowerSeries lo = expansion_at_pi_half(5);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(hi.coeff(k), lo.coeff(k));
  const PowerSeries z = expansion_at_zero(kMaxExpansionOrder);
  for (int k = 1; k <= kMaxExpansionOrder; k += 2) EXPECT_TRUE(z.coeff(k).is_zero());
  // Expanding (pi^2 - 4x^2) times the Maclaurin series of tan(x)/x reproduces it.
  const auto t = functions::tanx_over_x_coefficients(7);
  for (int k = 2; k <= kMaxExpansionOrder; k += 2) {
    const PiLaurent expected = PiLaurent::pi(2, kSeriesWindow) * PiLaurent(t[k / 2]) - PiLaurent(t[k / 2 - 1]) * 4L;
    EXPECT_EQ(z.coeff(k), expected) << k;
  }
}

TEST(PowerSeriesOps, Arithmetic) {
  const PowerSeries s = sin_series("v", 9);
  const PowerSeries c = cos_series("v", 9);
  const PowerSeries one = s * s + c * c;
  EXPECT_EQ(one.coeff(0), PiLaurent(1));
  for (int k = 1; k <= 9; ++k) EXPECT_TRUE(one.coeff(k).is_zero()) << k;
  const PowerSeries g = geometric_series("v", 6);
  const PowerSeries back = PowerSeries::constant(PiLaurent(1), "v", 6) / g;
  EXPECT_EQ(back.coeff(0), PiLaurent(1));
  EXPECT_EQ(back.coeff(1), PiLaurent(-1));
  for (int k = 2; k <= 6; ++k) EXPECT_TRUE(back.coeff(k).is_zero());
  // sin(v)/v times v gives sin(v) up to the shorter order.
  const PowerSeries sv = sinc_series("v", 8) * PowerSeries::identity("v", 8);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(sv.coeff(k), s.coeff(k));
  // Composition: g(2v) = 1/(1 - 2v).
  const PowerSeries two_v = PiLaurent(2) * PowerSeries::identity("v", 6);
  const PowerSeries comp = g.compose(two_v);
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(comp.coeff(k), PiLaurent(Rational(2).pow(k)));
  EXPECT_THROW(g / PowerSeries::identity("v", 6), Error);
}
