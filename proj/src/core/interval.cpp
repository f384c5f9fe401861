#include "tanbound/core/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "tanbound/core/error.hpp"

namespace tanbound {

namespace {

void require_finite(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error(ErrorKind::EnclosureBlowup, "interval endpoint is not finite");
}

// Below this magnitude an fma residual may underflow and lose its sign, so
// products and quotients are widened unconditionally.
constexpr double kResidualFloor = 0x1p-960;

// Directed rounding emulated from the round-to-nearest result: the exact
// error of a sum (TwoSum) or product/quotient (fma residual) tells which side
// the true value lies on, and only that side is stepped outward.
double add_down(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0.0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0.0 ? next_up(s) : s;
}

// sign of (exact a*b - p)
int mul_error_sign(double a, double b, double p) {
  if (a == 0.0 || b == 0.0) return 0;
  if (std::fabs(p) < kResidualFloor) return 2;
  const double e = std::fma(a, b, -p);
  return e > 0.0 ? 1 : (e < 0.0 ? -1 : 0);
}

// sign of (exact a/b - q)
int div_error_sign(double a, double b, double q) {
  if (a == 0.0) return 0;
  if (std::fabs(q) < kResidualFloor || std::fabs(a) < kResidualFloor) return 2;
  const double r = std::fma(-q, b, a);
  if (r == 0.0) return 0;
  return (r > 0.0) == (b > 0.0) ? 1 : -1;
}

double mul_down(double a, double b) {
  const double p = a * b;
  const int e = mul_error_sign(a, b, p);
  return (e < 0 || e == 2) ? next_down(p) : p;
}

double mul_up(double a, double b) {
  const double p = a * b;
  const int e = mul_error_sign(a, b, p);
  return (e > 0 || e == 2) ? next_up(p) : p;
}

double div_down(double a, double b) {
  const double q = a / b;
  const int e = div_error_sign(a, b, q);
  return (e < 0 || e == 2) ? next_down(q) : q;
}

double div_up(double a, double b) {
  const double q = a / b;
  const int e = div_error_sign(a, b, q);
  return (e > 0 || e == 2) ? next_up(q) : q;
}

Interval checked(double lo, double hi) {
  require_finite(lo, hi);
  return Interval(lo, hi);
}

}  // namespace

Interval::Interval(double point) : lo_(point), hi_(point) { require_finite(lo_, hi_); }

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  require_finite(lo_, hi_);
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

double Interval::mid() const { return 0.5 * lo_ + 0.5 * hi_; }

double Interval::width() const { return next_up(hi_ - lo_); }

double Interval::mig() const {
  if (contains_zero()) return 0.0;
  return std::fmin(std::fabs(lo_), std::fabs(hi_));
}

bool Interval::contains(const Rational& value) const {
  return Rational::from_double(lo_) <= value && value <= Rational::from_double(hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
  return checked(add_down(a.lo_, b.lo_), add_up(a.hi_, b.hi_));
}

Interval operator-(const Interval& a, const Interval& b) {
  return checked(add_down(a.lo_, -b.hi_), add_up(a.hi_, -b.lo_));
}

Interval operator*(const Interval& a, const Interval& b) {
  const double ends_a[2] = {a.lo_, a.hi_};
  const double ends_b[2] = {b.lo_, b.hi_};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : ends_a)
    for (double y : ends_b) {
      lo = std::min(lo, mul_down(x, y));
      hi = std::max(hi, mul_up(x, y));
    }
  return checked(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorKind::DivisorContainsZero, "divisor " + b.str() + " contains zero");
  const double ends_a[2] = {a.lo_, a.hi_};
  const double ends_b[2] = {b.lo_, b.hi_};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : ends_a)
    for (double y : ends_b) {
      lo = std::min(lo, div_down(x, y));
      hi = std::max(hi, div_up(x, y));
    }
  return checked(lo, hi);
}

std::string Interval::str() const { return "[" + format_double(lo_) + ", " + format_double(hi_) + "]"; }

Interval enclose(const Rational& value) {
  const double d = value.to_double();
  if (!std::isfinite(d)) throw Error(ErrorKind::EnclosureBlowup, "rational " + value.str() + " exceeds binary64 range");
  const Rational exact = Rational::from_double(d);
  if (exact == value) return Interval(d);
  if (exact < value) return Interval(d, next_up(d));
  return Interval(next_down(d), d);
}

Interval sqr(const Interval& x) {
  if (x.contains_zero()) {
    const double m = x.mag();
    return checked(0.0, mul_up(m, m));
  }
  const double a = x.mig();
  const double b = x.mag();
  return checked(std::max(0.0, mul_down(a, a)), mul_up(b, b));
}

Interval pow(const Interval& x, unsigned exponent) {
  if (exponent == 0) return Interval(1.0);
  if (exponent == 1) return x;
  const Interval half = pow(x, exponent / 2);
  const Interval squared = sqr(half);
  return exponent % 2 == 0 ? squared : squared * x;
}

Interval symmetric(double magnitude) {
  const double m = std::fabs(magnitude);
  return Interval(-m, m);
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

Interval refine(const Interval& a, const Interval& b) { return intersect(a, b).value_or(a); }

bool certainly_above(const Interval& x, const Rational& value) { return Rational::from_double(x.lo()) > value; }

bool certainly_below(const Interval& x, const Rational& value) { return Rational::from_double(x.hi()) < value; }

Interval interval_arith(const Interval& a, const Interval& b, IntervalOp op) {
  switch (op) {
    case IntervalOp::Add: return a + b;
    case IntervalOp::Sub: return a - b;
    case IntervalOp::Mul: return a * b;
    case IntervalOp::Div: return a / b;
  }
  return a;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.str(); }

std::string format_double(double value) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw Error(ErrorKind::Parse, "not a decimal number: '" + text + "'");
  return v;
}

}  // namespace tanbound
