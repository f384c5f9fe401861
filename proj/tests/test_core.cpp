#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "golden.hpp"
#include "tanbound/core/error.hpp"
#include "tanbound/core/interval.hpp"
#include "tanbound/core/pi_laurent.hpp"
#include "tanbound/core/poly.hpp"
#include "tanbound/core/rational.hpp"

using namespace tanbound;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

Rational frac(long n, long d) { return Rational(mpz_class(n), mpz_class(d)); }

}  // namespace

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(frac(8, 3) + frac(2, 15), frac(14, 5));
  EXPECT_EQ(frac(1, 3) * frac(2, 5), frac(2, 15));
  EXPECT_EQ((frac(14, 5) - frac(2, 15)).str(), "8/3");
  EXPECT_EQ(frac(6, -4).str(), "-3/2");
  EXPECT_EQ(frac(6, -4).den(), 2);
}

TEST(Rational, DivisionByZeroIsAnError) {
  try {
    (void)(Rational(1) / Rational(0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  EXPECT_THROW(Rational(mpz_class(1), mpz_class(0)), Error);
}

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(R("0.373"), frac(373, 1000));
  EXPECT_EQ(R("-1.5e-3"), frac(-3, 2000));
  EXPECT_EQ(R("22/7"), frac(22, 7));
  EXPECT_EQ(R("1E2"), Rational(100));
  EXPECT_THROW(R("1.2.3"), Error);
  EXPECT_THROW(R(""), Error);
  EXPECT_THROW(R("abc"), Error);
}

TEST(Rational, DoubleConversionIsExact) {
  const Rational r = Rational::from_double(0.1);
  EXPECT_NE(r, frac(1, 10));
  EXPECT_EQ(r.to_double(), 0.1);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(frac(1, 3).decimal(5), "0.33333");
  EXPECT_EQ(frac(-2, 3).decimal(3), "-0.667");
  EXPECT_EQ(Rational(42).decimal(0), "42");
}

TEST(Interval, Basics) {
  const Interval s = Interval(1, 2) + Interval(3, 4);
  EXPECT_LE(s.lo(), 4.0);
  EXPECT_GE(s.hi(), 6.0);
  EXPECT_LT(4.0 - s.lo(), 1e-15);
  const Interval p = Interval(-1, 1) * Interval(-1, 1);
  EXPECT_LE(p.lo(), -1.0);
  EXPECT_GE(p.hi(), 1.0);
  const Interval third = Interval(1.0) / Interval(3.0);
  EXPECT_TRUE(third.contains(frac(1, 3)));
  EXPECT_LT(third.lo(), third.hi());
}

TEST(Interval, RejectsBadEndpoints) {
  EXPECT_THROW(Interval(2, 1), std::invalid_argument);
  EXPECT_THROW(Interval(0, INFINITY), Error);
  EXPECT_THROW(Interval(1) / Interval(-1, 1), Error);
}

TEST(Interval, EncloseRational) {
  const Interval a = enclose(frac(1, 10));
  EXPECT_TRUE(a.contains(frac(1, 10)));
  EXPECT_EQ(next_up(a.lo()), a.hi());
  const Interval b = enclose(frac(3, 4));
  EXPECT_TRUE(b.is_point());
}

namespace {

Rational sample_inside(const Interval& x, std::mt19937_64& rng) {
  const Rational lo = Rational::from_double(x.lo());
  const Rational hi = Rational::from_double(x.hi());
  const Rational t(static_cast<long>(rng() % 1000001), 1000000);
  return lo + (hi - lo) * t;
}

Interval random_interval(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(-8.0, 8.0);
  std::uniform_real_distribution<double> width(0.0, 2.0);
  const double a = std::ldexp(std::uniform_real_distribution<double>(-1.0, 1.0)(rng), static_cast<int>(mag(rng)));
  const double w = rng() % 4 == 0 ? 0.0 : std::ldexp(width(rng), static_cast<int>(mag(rng)));
  return Interval(a, a + w);
}

}  // namespace

TEST(Interval, RandomizedContainmentSoundness) {
  std::mt19937_64 rng(20240601);
  const IntervalOp ops[] = {IntervalOp::Add, IntervalOp::Sub, IntervalOp::Mul, IntervalOp::Div};
  const RationalOp rops[] = {RationalOp::Add, RationalOp::Sub, RationalOp::Mul, RationalOp::Div};
  long failures = 0;
  long checked = 0;
  for (int i = 0; i < 1000000; ++i) {
    const Interval a = random_interval(rng);
    const Interval b = random_interval(rng);
    const int k = static_cast<int>(rng() % 4);
    if (k == 3 && b.contains_zero()) continue;
    const Interval r = interval_arith(a, b, ops[k]);
    const Rational ra = sample_inside(a, rng);
    const Rational rb = sample_inside(b, rng);
    ++checked;
    if (!r.contains(rational_arith(ra, rb, rops[k]))) ++failures;
  }
  EXPECT_EQ(failures, 0);
  EXPECT_GT(checked, 900000);
}

TEST(Interval, FormatRoundTrips) {
  for (double d : {0.1, 1.0 / 3.0, 1e-300, -2.5, 9.4009466314478129})
    EXPECT_EQ(parse_double(format_double(d)), d);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(PiEnclosure, ContainsPi) {
  const auto& pi = PiEnclosure::standard();
  const Rational pi50 = R("3.14159265358979323846264338327950288419716939937511");
  EXPECT_TRUE(pi.value().contains(pi50));
  EXPECT_EQ(next_up(pi.value().lo()), pi.value().hi());
  EXPECT_TRUE(pi.half().contains(pi50 / Rational(2)));
}

TEST(PiEnclosure, ReducedPrecisionStillContainsPi) {
  const Rational pi50 = R("3.14159265358979323846264338327950288419716939937511");
  for (int bits : {2, 8, 20, 40, 53}) {
    const auto p = PiEnclosure::with_precision(bits);
    EXPECT_TRUE(p.value().contains(pi50)) << bits;
  }
  EXPECT_THROW(PiEnclosure::with_precision(1), std::invalid_argument);
}

TEST(PiLaurent, CanonicalFormAndEquality) {
  const PiLaurent a = PiLaurent::monomial(16, -2) - PiLaurent(frac(8, 3));
  const PiLaurent b = PiLaurent(frac(-8, 3)) + PiLaurent::monomial(16, -2);
  EXPECT_EQ(a, b);
  EXPECT_TRUE((a - b).is_zero());
  EXPECT_TRUE((a - b).coeffs().empty());
  EXPECT_EQ(a.str(), "16/π² − 8/3");
  EXPECT_EQ((PiLaurent::monomial(32, -3) - PiLaurent::monomial(frac(8, 3), -1)).str(), "32/π³ − 8/(3π)");
  EXPECT_EQ((PiLaurent::monomial(frac(1, 3), 2) - PiLaurent(4)).str(), "π²/3 − 4");
}

TEST(PiLaurent, WindowOverflowIsAnError) {
  const PiLaurent p = PiLaurent::pi(4);
  try {
    (void)(p * p);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PowerWindowOverflow);
  }
  const PiLaurent w = p.widened({-3, 8});
  EXPECT_EQ((w * w).max_power(), 8);
  EXPECT_THROW(PiLaurent::monomial(1, 7), Error);
}

TEST(PiLaurent, DivisionOnlyByMonomials) {
  const PiLaurent p = PiLaurent::monomial(6, 3) + PiLaurent(2);
  EXPECT_EQ(p.divided_by(PiLaurent::monomial(2, 1)), PiLaurent::monomial(3, 2) + PiLaurent::monomial(1, -1));
  EXPECT_THROW((void)p.divided_by(p), Error);
}

TEST(PiLaurent, RingLawsOnRandomElements) {
  std::mt19937_64 rng(7);
  auto random_element = [&] {
    PiLaurent p;
    for (int k = -1; k <= 2; ++k)
      if (rng() % 2) p += PiLaurent::monomial(frac(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1), k);
    return p;
  };
  for (int i = 0; i < 500; ++i) {
    const PiLaurent a = random_element();
    const PiLaurent b = random_element();
    const PiLaurent c = random_element();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PiLaurent, EvaluationMatchesReference) {
  EXPECT_TRUE(pilaurent_eval(PiLaurent::pi(2)).contains(R(golden::kPiSquared)));
  const Interval sq = pilaurent_eval(PiLaurent::pi(2));
  EXPECT_LE(sq.hi() - sq.lo(), 8 * (next_up(sq.lo()) - sq.lo()));
  const Interval u0 = pilaurent_eval(PiLaurent::monomial(144, 3) + PiLaurent::monomial(-15, 5));
  EXPECT_TRUE(u0.contains(R(golden::kUConstant)));
  EXPECT_EQ(pilaurent_eval(PiLaurent()).lo(), 0.0);
  EXPECT_EQ(pilaurent_eval(PiLaurent()).hi(), 0.0);
}

TEST(PiLaurent, TighterPiNeverMuchWider) {
  const PiLaurent p = PiLaurent::monomial(16, -2) - PiLaurent(frac(8, 3)) + PiLaurent::monomial(3, 3);
  const Interval coarse = pilaurent_eval(p, PiEnclosure::with_precision(30));
  const Interval fine = pilaurent_eval(p, PiEnclosure::standard());
  EXPECT_GE(fine.lo(), coarse.lo() - 1e-12);
  EXPECT_LE(fine.hi(), coarse.hi() + 1e-12);
  EXPECT_LT(fine.width(), coarse.width());
}

TEST(Poly, CalculusAndComposition) {
  const PiPoly x = PiPoly::x();
  const PiPoly p = x * x * x + PiLaurent(2) * x + PiPoly::constant(PiLaurent::pi(1));
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.derivative(), PiLaurent(3) * (x * x) + PiPoly::constant(2));
  EXPECT_EQ(p.derivative(3), PiPoly::constant(6));
  EXPECT_TRUE(p.derivative(4).is_zero());
  EXPECT_EQ(p.derivative(4).degree(), -1);
  const PiPoly shifted = p.compose(x + PiPoly::constant(1));
  EXPECT_EQ(eval_exact(shifted, Rational(0)), eval_exact(p, Rational(1)));
  EXPECT_EQ(eval_exact(p, frac(1, 2)), PiLaurent(frac(9, 8)) + PiLaurent::pi(1));
}

TEST(Poly, IntervalHornerContainsExactValues) {
  const PiPoly p{PiLaurent::monomial(144, 3) + PiLaurent::monomial(-15, 5), PiLaurent(7), PiLaurent::monomial(-3, -1)};
  const IntervalPoly lp = lift(p);
  for (const char* s : {"0.1", "0.373", "1.2", "-0.7"}) {
    const Rational x = R(s);
    const Interval exact = pilaurent_eval(eval_exact(p, x));
    const Interval h = horner_enclosure(lp, enclose(x));
    EXPECT_TRUE(intersect(exact, h).has_value()) << s;
  }
}
