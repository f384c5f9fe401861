#pragma once

#include <string>

#include <gmpxx.h>

#include "tanbound/core/pi_laurent.hpp"
#include "tanbound/core/poly.hpp"
#include "tanbound/core/rational.hpp"
#include "tanbound/functions.hpp"
#include "tanbound/oracle/ball.hpp"
#include "tanbound/oracle/power_series.hpp"

namespace tanbound::oracle {

inline constexpr int kDefaultDigits = 50;

/// mantissa * 10^exponent, correct to within one unit of the last digit.
struct BigDecimal {
  mpz_class mantissa;
  int exponent = 0;
  int precision_digits = kDefaultDigits;

  Rational to_rational() const;
  /// Positional notation, e.g. "-0.0037032644688582550".
  std::string str() const;
};

/// Pi with n digits after the decimal point, correctly rounded; the value is
/// confirmed by two independent arctan formulas. 1 <= n <= 1000.
BigDecimal pi_digits(int n);

/// Working precision in bits for a requested number of decimal digits.
int bits_for_digits(int digits);

/// Certified ball for fn at x. TanxOverX at 0 is the limit 1. Error(PoleProximity)
/// for tan and tan(x)/x when |cos x| < 10^(-digits/2).
Ball reference_ball(functions::Fn fn, const Rational& x, int digits = kDefaultDigits);

/// As reference_ball with an explicit working precision; the pole check
/// still uses `digits`.
Ball function_ball(functions::Fn fn, const Rational& x, int bits, int digits);

/// fn(x) rounded to `digits` significant digits.
BigDecimal reference_value(functions::Fn fn, const Rational& x, int digits = kDefaultDigits);

/// Exact PiLaurent or polynomial-at-a-rational-point values, to `digits`
/// significant digits. working_digits raises the internal precision.
BigDecimal reference_value(const PiLaurent& value, int digits = kDefaultDigits, int working_digits = 0);
BigDecimal reference_value(const PiPoly& p, const Rational& x, int digits = kDefaultDigits);

/// Rounds a ball to `digits` significant digits, raising precision is the
/// caller's job: Error(EnclosureBlowup) if the ball is too wide to round.
BigDecimal round_ball(const Ball& b, int digits);

}  // namespace tanbound::oracle
