#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>

#include "tanbound/core/rational.hpp"

namespace tanbound {

/// Closed binary64 interval. An inexact arithmetic result is widened outward
/// by one representable step on the side where the exact value lies, which
/// keeps containment without touching the FPU rounding mode.
class Interval {
 public:
  constexpr Interval() = default;
  explicit Interval(double point);
  Interval(double lo, double hi);

  static Interval hull(const Interval& a, const Interval& b);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const;
  /// Upper bound on hi - lo.
  double width() const;
  /// max |t| over the interval.
  double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
  /// min |t| over the interval.
  double mig() const;

  bool is_point() const { return lo_ == hi_; }
  bool contains(double t) const { return lo_ <= t && t <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool contains(const Rational& value) const;
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool is_positive() const { return lo_ > 0.0; }
  bool is_negative() const { return hi_ < 0.0; }
  /// +1 / -1 when the interval is sign-definite, 0 otherwise.
  int sign() const { return is_positive() ? 1 : (is_negative() ? -1 : 0); }

  Interval operator-() const { return Interval(-hi_, -lo_); }
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws Error(DivisorContainsZero) when 0 is in b.
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

  friend bool operator==(const Interval&, const Interval&) = default;

  std::string str() const;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

/// Tightest interval with binary64 endpoints around an exact rational.
Interval enclose(const Rational& value);

Interval sqr(const Interval& x);
Interval pow(const Interval& x, unsigned exponent);
/// Symmetric [-m, m].
Interval symmetric(double magnitude);
std::optional<Interval> intersect(const Interval& a, const Interval& b);
/// Intersection when the operands overlap, otherwise `a`. Both operands
/// must enclose the same quantity, so disjointness would be a bug.
Interval refine(const Interval& a, const Interval& b);

/// True when every point of the enclosure is strictly above / below `value`.
bool certainly_above(const Interval& x, const Rational& value);
bool certainly_below(const Interval& x, const Rational& value);

enum class IntervalOp { Add, Sub, Mul, Div };
Interval interval_arith(const Interval& a, const Interval& b, IntervalOp op);

std::ostream& operator<<(std::ostream& os, const Interval& x);

/// Shortest "%.17g" rendering; round-trips through strtod.
std::string format_double(double value);
double parse_double(const std::string& text);

}  // namespace tanbound
