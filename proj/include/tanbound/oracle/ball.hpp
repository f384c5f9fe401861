#pragma once

#include <gmpxx.h>

#include "tanbound/core/rational.hpp"

namespace tanbound::oracle {

/// Fixed-point real with an error radius: the exact value lies in
/// [(mid - rad) 2^-bits, (mid + rad) 2^-bits]. Operands of a binary
/// operation must share the same bits.
class Ball {
 public:
  Ball() = default;
  Ball(mpz_class mid, mpz_class rad, int bits);

  static Ball from_rational(const Rational& value, int bits);
  static Ball from_integer(long value, int bits);

  const mpz_class& mid() const { return mid_; }
  const mpz_class& rad() const { return rad_; }
  int bits() const { return bits_; }

  Rational lower() const;
  Rational upper() const;
  Rational center() const;
  /// |mid| + rad, in units of 2^-bits.
  mpz_class magnitude_bound() const;

  bool is_positive() const { return mid_ > rad_; }
  bool is_negative() const { return -mid_ > rad_; }
  bool contains_zero() const { return !is_positive() && !is_negative(); }

  Ball operator-() const { return Ball(-mid_, rad_, bits_); }
  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  /// Error(DivisorContainsZero) if b contains 0.
  friend Ball operator/(const Ball& a, const Ball& b);

  Ball times(long n) const;
  Ball divided_by(long n) const;
  Ball with_extra_radius(const mpz_class& r) const { return Ball(mid_, rad_ + r, bits_); }

 private:
  mpz_class mid_;
  mpz_class rad_;
  int bits_ = 0;
};

/// Error(ContainsZero) unless the ball is certainly positive.
Ball sqrt(const Ball& x);

/// Pi by Machin's formula 16 atan(1/5) - 4 atan(1/239).
Ball pi_machin(int bits);
/// Pi by 48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239).
Ball pi_gauss(int bits);
/// Cached Machin value.
const Ball& pi_ball(int bits);

Ball sin(const Ball& x);
Ball cos(const Ball& x);
/// sin(x)/x, with the value 1 at 0. Only for |x| <= 1.
Ball sinc(const Ball& x);
Ball atan(const Ball& x);

}  // namespace tanbound::oracle
