#include "tanbound/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "tanbound/core/error.hpp"

namespace tanbound::oracle {

namespace {

mpz_class pow10(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return r;
}

// round(v * 10^scale) for rational v, ties away from zero.
mpz_class round_scaled(const Rational& v, int scale) {
  Rational s = scale >= 0 ? v * Rational(pow10(scale), 1) : v / Rational(pow10(-scale), 1);
  const mpz_class twice = s.num() * 2;
  const mpz_class den2 = s.den() * 2;
  mpz_class r;
  if (twice >= 0)
    mpz_fdiv_q(r.get_mpz_t(), mpz_class(twice + s.den()).get_mpz_t(), den2.get_mpz_t());
  else
    mpz_cdiv_q(r.get_mpz_t(), mpz_class(twice - s.den()).get_mpz_t(), den2.get_mpz_t());
  return r;
}

int decimal_exponent(const Rational& v) {
  // floor(log10 |v|), refined exactly after a floating estimate.
  long e2 = 0;
  const double mn = mpz_get_d_2exp(&e2, v.num().get_mpz_t());
  long f2 = 0;
  const double md = mpz_get_d_2exp(&f2, v.den().get_mpz_t());
  int e = static_cast<int>(std::floor(std::log10(std::fabs(mn / md)) + static_cast<double>(e2 - f2) * std::log10(2.0)));
  const Rational a = v.abs();
  auto p10 = [](int k) { return k >= 0 ? Rational(pow10(k), 1) : Rational(1, pow10(-k)); };
  while (a >= p10(e + 1)) ++e;
  while (a < p10(e)) --e;
  return e;
}

template <class F>
BigDecimal with_refinement(int digits, F compute, int working_digits = 0) {
  int bits = bits_for_digits(working_digits > digits ? working_digits : digits);
  for (int attempt = 0; attempt < 6; ++attempt, bits *= 2) {
    try {
      return round_ball(compute(bits), digits);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EnclosureBlowup) throw;
    }
  }
  throw Error(ErrorKind::EnclosureBlowup, "reference value did not settle");
}

Ball pi_power(int k, int bits) {
  const Ball& pi = pi_ball(bits);
  Ball r = Ball::from_integer(1, bits);
  for (int i = 0; i < (k < 0 ? -k : k); ++i) r = r * pi;
  return k < 0 ? Ball::from_integer(1, bits) / r : r;
}

Ball ball_of(const PiLaurent& p, int bits) {
  Ball sum = Ball::from_integer(0, bits);
  for (const auto& [k, c] : p.coeffs()) sum = sum + Ball::from_rational(c, bits) * pi_power(k, bits);
  return sum;
}

}  // namespace

Rational BigDecimal::to_rational() const {
  return exponent >= 0 ? Rational(mantissa * pow10(exponent), 1) : Rational(mantissa, pow10(-exponent));
}

std::string BigDecimal::str() const {
  std::string digits = mpz_class(::abs(mantissa)).get_str();
  const bool negative = mantissa < 0;
  if (exponent >= 0) {
    digits.append(static_cast<std::size_t>(exponent), '0');
  } else {
    const std::size_t frac = static_cast<std::size_t>(-exponent);
    if (digits.size() <= frac) digits.insert(0, frac + 1 - digits.size(), '0');
    digits.insert(digits.size() - frac, ".");
  }
  return negative ? "-" + digits : digits;
}

int bits_for_digits(int digits) { return static_cast<int>(std::ceil(digits * 3.3219280948873623 * 1.5)) + 64; }

BigDecimal round_ball(const Ball& b, int digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  if (b.mid() == 0 && b.rad() == 0) return BigDecimal{0, 0, digits};
  if (b.contains_zero()) throw Error(ErrorKind::EnclosureBlowup, "ball contains zero, cannot fix leading digit");
  const int e = decimal_exponent(b.center());
  const int scale = digits - 1 - e;
  const mpz_class lo = round_scaled(b.lower(), scale);
  const mpz_class hi = round_scaled(b.upper(), scale);
  // One unit of the last digit is the stated accuracy; a wider spread means
  // more working precision is needed.
  if (hi - lo > 1) throw Error(ErrorKind::EnclosureBlowup, "ball too wide for the requested digits");
  return BigDecimal{round_scaled(b.center(), scale), -scale, digits};
}

BigDecimal pi_digits(int n) {
  if (n < 1 || n > 1000) throw std::invalid_argument("pi_digits needs 1 <= n <= 1000");
  for (int bits = bits_for_digits(n + 1);; bits *= 2) {
    const Ball m = pi_machin(bits);
    const Ball g = pi_gauss(bits);
    if (m.upper() < g.lower() || g.upper() < m.lower())
      throw std::logic_error("Machin and Gauss pi series disagree");
    const mpz_class lo = round_scaled(m.lower(), n);
    const mpz_class hi = round_scaled(m.upper(), n);
    if (lo == hi && lo == round_scaled(g.lower(), n) && lo == round_scaled(g.upper(), n)) return BigDecimal{lo, -n, n};
  }
}

Ball reference_ball(functions::Fn fn, const Rational& x, int digits) {
  return function_ball(fn, x, bits_for_digits(digits), digits);
}

Ball function_ball(functions::Fn fn, const Rational& x, int bits, int digits) {
  using functions::Fn;
  const Ball xb = Ball::from_rational(x, bits);
  auto pole_check = [&](const Ball& c) {
    const Rational limit(1, pow10((digits + 1) / 2));
    if (c.upper().abs() < limit && c.lower().abs() < limit)
      throw Error(ErrorKind::PoleProximity, "argument is within 10^(-digits/2) of a pole of tan");
    if (c.contains_zero()) throw Error(ErrorKind::PoleProximity, "cosine not separated from zero");
  };
  switch (fn) {
    case Fn::Sin: return sin(xb);
    case Fn::Cos: return cos(xb);
    case Fn::Arctan: return atan(xb);
    case Fn::Tan: {
      const Ball c = cos(xb);
      pole_check(c);
      return sin(xb) / c;
    }
    case Fn::TanxOverX: {
      if (x.is_zero()) return Ball::from_integer(1, bits);
      const Ball c = cos(xb);
      pole_check(c);
      if (x.abs() <= Rational(1)) return sinc(xb) / c;
      return sin(xb) / c / xb;
    }
  }
  throw std::logic_error("unknown function");
}

BigDecimal reference_value(functions::Fn fn, const Rational& x, int digits) {
  // Zero results are exact only for sin, tan and arctan at 0.
  if (x.is_zero() && fn != functions::Fn::Cos && fn != functions::Fn::TanxOverX) return BigDecimal{0, 0, digits};
  return with_refinement(digits, [&](int bits) { return function_ball(fn, x, bits, digits); });
}

BigDecimal reference_value(const PiLaurent& value, int digits, int working_digits) {
  if (value.is_zero()) return BigDecimal{0, 0, digits};
  return with_refinement(digits, [&](int bits) { return ball_of(value, bits); }, working_digits);
}

BigDecimal reference_value(const PiPoly& p, const Rational& x, int digits) {
  return reference_value(eval_exact(p, x), digits);
}

}  // namespace tanbound::oracle
