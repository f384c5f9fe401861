#include "tanbound/core/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "tanbound/core/error.hpp"

namespace tanbound {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorKind::Parse, "missing digits in '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorKind::Parse, "invalid number '" + std::string(whole) + "'");
  return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long exponent) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational r(parse_integer(text.substr(0, slash), whole), parse_integer(text.substr(slash + 1), whole));
    return negative ? -r : r;
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    const mpz_class magnitude = parse_integer(exp_text, whole);
    if (magnitude > 100000) throw Error(ErrorKind::Parse, "exponent out of range in '" + std::string(whole) + "'");
    exponent = magnitude.get_si() * (exp_negative ? -1 : 1);
    text = text.substr(0, e);
  }

  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw Error(ErrorKind::Parse, "invalid number '" + std::string(whole) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    digits = std::string(text);
  }

  mpz_class num = parse_integer(digits, whole);
  mpz_class den = 1;
  if (exponent >= 0) num *= pow10(static_cast<unsigned long>(exponent));
  else den = pow10(static_cast<unsigned long>(-exponent));
  if (negative) num = -num;
  return Rational(num, den);
}

double Rational::to_double() const {
  const double d = value_.get_d();  // truncates toward zero
  if (!std::isfinite(d)) return d;
  const Rational exact = from_double(d);
  if (exact == *this) return d;
  const double other = std::nextafter(d, *this > exact ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(other)) return d;
  return (*this - exact).abs() <= (from_double(other) - *this).abs() ? d : other;
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::Parse, "non-finite double has no rational value");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(q);
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return Rational(1) / pow(-exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  const mpz_class scale = pow10(static_cast<unsigned long>(digits));
  mpz_class scaled_num = ::abs(value_.get_num()) * scale * 2 + value_.get_den();
  mpz_class twice_den = value_.get_den() * 2;
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled_num.get_mpz_t(), twice_den.get_mpz_t());
  std::string s = rounded.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && rounded != 0) s.insert(0, "-");
  return s;
}

Rational rational_arith(const Rational& a, const Rational& b, RationalOp op) {
  switch (op) {
    case RationalOp::Add: return a + b;
    case RationalOp::Sub: return a - b;
    case RationalOp::Mul: return a * b;
    case RationalOp::Div: return a / b;
  }
  return a;
}

}  // namespace tanbound
