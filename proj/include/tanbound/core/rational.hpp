#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tanbound {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& value);

  /// Accepts "n", "n/d", "-1.25", "3e-4" and "1.5E+2". No binary64 round trip.
  static Rational parse(std::string_view text);
  /// Exact value of a finite double.
  static Rational from_double(double value);

  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational pow(int exponent) const;

  /// Nearest double; use enclose() for certified work.
  double to_double() const;

  /// "n" or "n/d".
  std::string str() const;
  /// Decimal rendering with `digits` digits after the point, rounded half away from zero.
  std::string decimal(int digits) const;

 private:
  mpq_class value_;
};

enum class RationalOp { Add, Sub, Mul, Div };

/// Throws Error(DivisionByZero) for Div with a zero divisor.
Rational rational_arith(const Rational& a, const Rational& b, RationalOp op);

}  // namespace tanbound
