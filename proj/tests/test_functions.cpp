#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "golden.hpp"
#include "tanbound/bounds.hpp"
#include "tanbound/core/error.hpp"
#include "tanbound/functions.hpp"
#include "tanbound/oracle.hpp"

using namespace tanbound;
using namespace tanbound::functions;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

const Interval& pi() { return PiEnclosure::standard().value(); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Parse;
}

bool ball_inside(const oracle::Ball& b, const Interval& v) {
  return Rational::from_double(v.lo()) <= b.lower() && b.upper() <= Rational::from_double(v.hi());
}

}  // namespace

TEST(Sin, Examples) {
  const Interval z = sin_enclosure(Interval(0.0));
  EXPECT_EQ(z.lo(), 0.0);
  EXPECT_EQ(z.hi(), 0.0);
  const Interval one = sin_enclosure(PiEnclosure::standard().half());
  EXPECT_TRUE(one.contains(1.0));
  EXPECT_LE(one.width(), 1e-15);
  EXPECT_TRUE(sin_enclosure(Interval(0.5)).contains(R(golden::kSinHalf)));
}

TEST(Cos, Examples) {
  EXPECT_TRUE(cos_enclosure(Interval(0.0)).contains(1.0));
  const Interval half = cos_enclosure(pi() / Interval(3.0));
  EXPECT_TRUE(half.contains(0.5));
  EXPECT_LE(half.width(), 1e-15);
  EXPECT_TRUE(cos_enclosure(Interval(1.5)).contains(R(golden::kCos1p5)));
}

TEST(Tan, Examples) {
  const Interval one = tan_enclosure(pi() / Interval(4.0));
  EXPECT_TRUE(one.contains(1.0));
  EXPECT_LE(one.width(), 4 * (next_up(1.0) - 1.0) + 1e-16);
  EXPECT_TRUE(tan_enclosure(Interval(1.0)).contains(R(golden::kTan1)));
  EXPECT_EQ(kind_of([] { tan_enclosure(Interval(1.5707, 1.5708)); }), ErrorKind::PoleProximity);
}

TEST(TanxOverX, Examples) {
  const Interval q = tanx_over_x_enclosure(pi() / Interval(4.0));
  EXPECT_TRUE(q.contains(Interval(4.0) / pi()));
  const Interval tiny = tanx_over_x_enclosure(Interval(1e-9));
  EXPECT_TRUE(tiny.contains(1.0));
  EXPECT_LE(tiny.width(), 1e-15);
  EXPECT_TRUE(tiny.contains(R(golden::kTanxOverXAt1em9)));
  EXPECT_TRUE(tanx_over_x_enclosure(Interval(1e-6)).contains(R(golden::kTanxOverXAt1em6)));
  EXPECT_TRUE(tanx_over_x_enclosure(Interval(1.5)).contains(R(golden::kTanxOverX1p5)));
  EXPECT_EQ(kind_of([] { tanx_over_x_enclosure(Interval(0.0)); }), ErrorKind::ContainsZero);
  EXPECT_EQ(kind_of([] { tanx_over_x_enclosure(Interval(1.6)); }), ErrorKind::PoleProximity);
}

TEST(Arctan, Examples) {
  const Interval z = arctan_enclosure(Interval(0.0));
  EXPECT_EQ(z.lo(), 0.0);
  EXPECT_EQ(z.hi(), 0.0);
  EXPECT_TRUE(arctan_enclosure(Interval(1.0)).contains(pi() / Interval(4.0)) ||
              intersect(arctan_enclosure(Interval(1.0)), pi() / Interval(4.0)).has_value());
  EXPECT_TRUE(arctan_enclosure(Interval(1.0)).contains(oracle::pi_digits(50).to_rational() / Rational(4)));
  EXPECT_TRUE(arctan_enclosure(Interval(10.0)).contains(R(golden::kAtan10)));
  EXPECT_TRUE(arctan_enclosure(Interval(-10.0)).contains(-R(golden::kAtan10)));
}

TEST(Functions, RandomPointsContainOracleValues) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(1e-3, 1.5707);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = dist(rng);
    const Rational tr = Rational::from_double(t);
    const Interval x(t);
    for (Fn fn : {Fn::Sin, Fn::Cos, Fn::Tan, Fn::Arctan, Fn::TanxOverX}) {
      const oracle::Ball b = oracle::reference_ball(fn, tr, 50);
      if (!ball_inside(b, enclosure(fn, {x}))) ++failures;
    }
  }
  EXPECT_EQ(failures, 0);
}

TEST(Tan, RelativeWidth) {
  for (int i = 0; i <= 400; ++i) {
    const double t = 0.01 + (1.55 - 0.01) * i / 400.0;
    const Interval v = tan_enclosure(Interval(t));
    EXPECT_LE(v.width(), 1e-12 * std::fabs(v.mid())) << t;
  }
}

TEST(Functions, MonotoneContainment) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.05, 1.45);
  for (int i = 0; i < 2000; ++i) {
    const double a = dist(rng);
    const double w = std::ldexp(1.0, -static_cast<int>(rng() % 30) - 4);
    const Interval inner(a + w / 4, a + w / 2);
    const Interval outer(a, a + w);
    for (Fn fn : {Fn::Sin, Fn::Cos, Fn::Tan, Fn::Arctan, Fn::TanxOverX}) {
      const Interval fi = enclosure(fn, {inner});
      const Interval fo = enclosure(fn, {outer});
      const double slack_lo = 2 * (next_up(std::fabs(fo.lo())) - std::fabs(fo.lo()));
      const double slack_hi = 2 * (next_up(std::fabs(fo.hi())) - std::fabs(fo.hi()));
      EXPECT_GE(fi.lo(), fo.lo() - slack_lo) << to_string(fn) << " at " << a;
      EXPECT_LE(fi.hi(), fo.hi() + slack_hi) << to_string(fn) << " at " << a;
    }
  }
}

TEST(Functions, WideIntervalsAreRejected) {
  EXPECT_EQ(kind_of([] { sin_enclosure(Interval(0.0, 1.5)); }), ErrorKind::ReductionFailure);
  EXPECT_EQ(kind_of([] { cos_enclosure(Interval(100.0)); }), ErrorKind::ReductionFailure);
}

TEST(TanxOverX, MaclaurinCoefficients) {
  const auto t = tanx_over_x_coefficients(4);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], Rational(1));
  EXPECT_EQ(t[1], Rational(mpz_class(1), mpz_class(3)));
  EXPECT_EQ(t[2], Rational(mpz_class(2), mpz_class(15)));
  EXPECT_EQ(t[3], Rational(mpz_class(17), mpz_class(315)));
}

TEST(TanxOverX, TailAndScaledFormsAgree) {
  for (double t : {0.05, 0.3, 0.9, 1.2, 1.5, 1.57}) {
    const Interval x(t);
    const Interval direct = tanx_over_x_enclosure(x);
    for (int order = 0; order <= 4; ++order) {
      const Interval tail = tanx_over_x_tail_enclosure(x, order);
      Interval rebuilt(0.0);
      const auto c = tanx_over_x_coefficients(order);
      for (int k = order - 1; k >= 0; --k) rebuilt = rebuilt * sqr(x) + enclose(c[static_cast<std::size_t>(k)]);
      rebuilt = rebuilt + pow(x, static_cast<unsigned>(2 * order)) * tail;
      EXPECT_TRUE(intersect(rebuilt, direct).has_value()) << t << " order " << order;
    }
    const Interval q = (pi() - Interval(2.0) * x) * (pi() + Interval(2.0) * x);
    EXPECT_TRUE(intersect(scaled_tanx_over_x_enclosure(x) / q, direct).has_value()) << t;
  }
}

TEST(TanxOverX, ScaledLimitNearPole) {
  const Interval x = PiEnclosure::standard().half() - Interval(1e-4);
  const Interval s = scaled_tanx_over_x_enclosure(x);
  EXPECT_TRUE(s.contains(R(golden::kScaledNearPole)));
  EXPECT_LT(s.width(), 1e-6);
}

namespace {

Interval residual(bounds::BoundKind kind, double t) {
  const auto& f = bounds::formula(kind);
  return arctan_ratio_residual(f.numerator, f.denominator, Interval(t));
}

}  // namespace

// f = arctan(x (8 + a)/q) - x < 0, g = arctan(x (8 + b)/q) - x > 0, h > 0.
TEST(ArctanResidual, SignReproduction) {
  for (int i = 0; i < 100; ++i) {
    const double tf = 0.38 + (1.57 - 0.38) * (i + 0.5) / 100;
    EXPECT_TRUE(residual(bounds::BoundKind::Thm1Lower, tf).is_negative()) << "f at " << tf;
    const double tg = 0.31 + (1.57 - 0.31) * (i + 0.5) / 100;
    EXPECT_TRUE(residual(bounds::BoundKind::Thm1Upper, tg).is_positive()) << "g at " << tg;
    const double th = 0.01 + (1.37 - 0.01) * (i + 0.5) / 100;
    EXPECT_TRUE(residual(bounds::BoundKind::Thm2Upper, th).is_positive()) << "h at " << th;
  }
}
