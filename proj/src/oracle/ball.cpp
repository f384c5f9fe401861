#include "tanbound/oracle/ball.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "tanbound/core/error.hpp"

namespace tanbound::oracle {

namespace {

mpz_class shift_left(const mpz_class& v, int bits) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

mpz_class floor_shift(const mpz_class& v, int bits) {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

mpz_class ceil_shift(const mpz_class& v, int bits) {
  mpz_class r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class isqrt(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

void same_scale(const Ball& a, const Ball& b) {
  if (a.bits() != b.bits()) throw std::invalid_argument("ball operands use different scales");
}

// Sum of an alternating series whose terms decrease in magnitude from the
// first omitted one on; next(term, n) produces term n+1 from term n.
template <class Next>
Ball alternating_sum(Ball term, Next next) {
  Ball sum = term;
  const mpz_class tiny = 4;
  for (int n = 0;; ++n) {
    term = next(term, n);
    if (term.magnitude_bound() <= tiny || n > 100000) return sum.with_extra_radius(term.magnitude_bound());
    sum = sum + term;
  }
}

Ball atan_series(const Ball& x) {
  const Ball x2 = x * x;
  Ball power = x;
  Ball sum = x;
  for (long k = 1;; ++k) {
    power = -(power * x2);
    const Ball term = power.divided_by(2 * k + 1);
    if (term.magnitude_bound() <= 4 || k > 100000) return sum.with_extra_radius(term.magnitude_bound());
    sum = sum + term;
  }
}

Ball atan_inverse(long n, int bits) { return atan_series(Ball::from_rational(Rational(mpz_class(1), mpz_class(n)), bits)); }

}  // namespace

Ball::Ball(mpz_class mid, mpz_class rad, int bits) : mid_(std::move(mid)), rad_(std::move(rad)), bits_(bits) {
  if (rad_ < 0) throw std::invalid_argument("ball radius must be non-negative");
}

Ball Ball::from_rational(const Rational& value, int bits) {
  const mpz_class scaled = shift_left(value.num(), bits);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value.den().get_mpz_t());
  const bool exact = mpz_divisible_p(scaled.get_mpz_t(), value.den().get_mpz_t()) != 0;
  return Ball(q, exact ? 0 : 1, bits);
}

Ball Ball::from_integer(long value, int bits) { return Ball(shift_left(mpz_class(value), bits), 0, bits); }

Rational Ball::lower() const { return Rational(mid_ - rad_, shift_left(1, bits_)); }
Rational Ball::upper() const { return Rational(mid_ + rad_, shift_left(1, bits_)); }
Rational Ball::center() const { return Rational(mid_, shift_left(1, bits_)); }

mpz_class Ball::magnitude_bound() const { return ::abs(mid_) + rad_; }

Ball operator+(const Ball& a, const Ball& b) {
  same_scale(a, b);
  return Ball(a.mid_ + b.mid_, a.rad_ + b.rad_, a.bits_);
}

Ball operator-(const Ball& a, const Ball& b) {
  same_scale(a, b);
  return Ball(a.mid_ - b.mid_, a.rad_ + b.rad_, a.bits_);
}

Ball operator*(const Ball& a, const Ball& b) {
  same_scale(a, b);
  const mpz_class mid = floor_shift(a.mid_ * b.mid_, a.bits_);
  const mpz_class err = ::abs(a.mid_) * b.rad_ + ::abs(b.mid_) * a.rad_ + a.rad_ * b.rad_;
  return Ball(mid, ceil_shift(err, a.bits_) + 1, a.bits_);
}

Ball operator/(const Ball& a, const Ball& b) {
  same_scale(a, b);
  if (b.contains_zero()) throw Error(ErrorKind::DivisorContainsZero, "ball divisor contains zero");
  const mpz_class bm = ::abs(b.mid_);
  mpz_class mid;
  const mpz_class scaled = shift_left(a.mid_, a.bits_);
  mpz_fdiv_q(mid.get_mpz_t(), scaled.get_mpz_t(), b.mid_.get_mpz_t());
  const mpz_class num = shift_left(a.rad_ * bm + ::abs(a.mid_) * b.rad_, a.bits_);
  return Ball(mid, ceil_div(num, bm * (bm - b.rad_)) + 1, a.bits_);
}

Ball Ball::times(long n) const { return Ball(mid_ * n, rad_ * (n < 0 ? -n : n), bits_); }

Ball Ball::divided_by(long n) const {
  if (n == 0) throw Error(ErrorKind::DivisionByZero, "ball division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mid_.get_mpz_t(), mpz_class(n).get_mpz_t());
  const mpz_class an = n < 0 ? -n : n;
  return Ball(q, ceil_div(rad_, an) + 1, bits_);
}

Ball sqrt(const Ball& x) {
  if (!x.is_positive()) throw Error(ErrorKind::ContainsZero, "square root of a ball not certainly positive");
  const mpz_class lo = isqrt(shift_left(x.mid() - x.rad(), x.bits()));
  const mpz_class hi = isqrt(shift_left(x.mid() + x.rad(), x.bits())) + 1;
  mpz_class mid = (lo + hi);
  mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
  const mpz_class rad = (hi - lo) / 2 + 1;
  return Ball(mid, rad, x.bits());
}

Ball pi_machin(int bits) { return atan_inverse(5, bits).times(16) - atan_inverse(239, bits).times(4); }

Ball pi_gauss(int bits) {
  return atan_inverse(18, bits).times(48) + atan_inverse(57, bits).times(32) - atan_inverse(239, bits).times(20);
}

const Ball& pi_ball(int bits) {
  static std::mutex mutex;
  static std::map<int, Ball> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, pi_machin(bits)).first;
  return it->second;
}

namespace {

// x = k pi/2 + r with |r| <= ~pi/4.
std::pair<long, Ball> reduce(const Ball& x) {
  const Ball half_pi = pi_ball(x.bits()).divided_by(2);
  mpz_class k;
  const mpz_class twice = x.mid() * 2 + half_pi.mid();
  mpz_fdiv_q(k.get_mpz_t(), twice.get_mpz_t(), mpz_class(half_pi.mid() * 2).get_mpz_t());
  if (!k.fits_slong_p()) throw Error(ErrorKind::ReductionFailure, "argument too large for reduction");
  const long kl = k.get_si();
  const Ball r = x - half_pi.times(kl);
  return {kl, r};
}

Ball sin_series(const Ball& r) {
  const Ball r2 = r * r;
  return alternating_sum(r, [&](const Ball& t, int n) { return -(t * r2).divided_by(static_cast<long>((2 * n + 2) * (2 * n + 3))); });
}

Ball cos_series(const Ball& r) {
  const Ball r2 = r * r;
  return alternating_sum(Ball::from_integer(1, r.bits()),
                         [&](const Ball& t, int n) { return -(t * r2).divided_by(static_cast<long>((2 * n + 1) * (2 * n + 2))); });
}

long mod4(long k) { return ((k % 4) + 4) % 4; }

}  // namespace

Ball sin(const Ball& x) {
  const auto [k, r] = reduce(x);
  switch (mod4(k)) {
    case 0: return sin_series(r);
    case 1: return cos_series(r);
    case 2: return -sin_series(r);
    default: return -cos_series(r);
  }
}

Ball cos(const Ball& x) {
  const auto [k, r] = reduce(x);
  switch (mod4(k)) {
    case 0: return cos_series(r);
    case 1: return -sin_series(r);
    case 2: return -cos_series(r);
    default: return sin_series(r);
  }
}

Ball sinc(const Ball& x) {
  if (x.magnitude_bound() > shift_left(1, x.bits())) throw std::invalid_argument("sinc series needs |x| <= 1");
  const Ball x2 = x * x;
  return alternating_sum(Ball::from_integer(1, x.bits()),
                         [&](const Ball& t, int n) { return -(t * x2).divided_by(static_cast<long>((2 * n + 2) * (2 * n + 3))); });
}

Ball atan(const Ball& x) {
  const mpz_class one = shift_left(1, x.bits());
  if (x.contains_zero() && x.magnitude_bound() <= one / 8) return atan_series(x);
  if (x.is_negative()) return -atan(-x);
  if (x.mid() - x.rad() > one) {
    const Ball half_pi = pi_ball(x.bits()).divided_by(2);
    return half_pi - atan(Ball::from_integer(1, x.bits()) / x);
  }
  Ball y = x;
  long factor = 1;
  while (y.magnitude_bound() > one / 8) {
    const Ball one_b = Ball::from_integer(1, x.bits());
    y = y / (one_b + sqrt(one_b + y * y));
    factor *= 2;
  }
  return atan_series(y).times(factor);
}

}  // namespace tanbound::oracle
