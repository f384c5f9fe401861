#include "tanbound/oracle/power_series.hpp"

#include <algorithm>
#include <stdexcept>

#include "tanbound/core/error.hpp"

namespace tanbound::oracle {

namespace {

PiLaurent zero() { return PiLaurent().widened(kSeriesWindow); }

PiLaurent q(long n, long d) { return PiLaurent(Rational(mpz_class(n), mpz_class(d))).widened(kSeriesWindow); }

void check_order(int order) {
  if (order < 0 || order > kMaxExpansionOrder) throw std::invalid_argument("expansion order must lie in [0, 12]");
}

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

PowerSeries::PowerSeries(std::string variable, int order)
    : variable_(std::move(variable)), coeffs_(static_cast<std::size_t>(order) + 1, zero()), order_(order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
}

PowerSeries::PowerSeries(std::string variable, std::vector<PiLaurent> coeffs, int order)
    : PowerSeries(std::move(variable), order) {
  for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) coeffs_[k] = coeffs[k].widened(kSeriesWindow);
}

PowerSeries PowerSeries::constant(const PiLaurent& c, std::string variable, int order) {
  return PowerSeries(std::move(variable), {c}, order);
}

PowerSeries PowerSeries::identity(std::string variable, int order) {
  return PowerSeries(std::move(variable), {zero(), q(1, 1)}, order);
}

const PiLaurent& PowerSeries::coeff(int k) const {
  static const PiLaurent z = zero();
  return (k >= 0 && k <= order_) ? coeffs_[static_cast<std::size_t>(k)] : z;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries r(a.variable_, std::min(a.order_, b.order_));
  for (int k = 0; k <= r.order_; ++k) r.coeffs_[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
  return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + q(-1, 1) * b; }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries r(a.variable_, std::min(a.order_, b.order_));
  for (int n = 0; n <= r.order_; ++n) {
    PiLaurent s = zero();
    for (int k = 0; k <= n; ++k) s += a.coeff(k) * b.coeff(n - k);
    r.coeffs_[static_cast<std::size_t>(n)] = s;
  }
  return r;
}

PowerSeries operator*(const PiLaurent& s, const PowerSeries& a) {
  PowerSeries r = a;
  for (auto& c : r.coeffs_) c = s.widened(kSeriesWindow) * c;
  return r;
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
  const PiLaurent& b0 = b.coeff(0);
  if (!b0.is_monomial()) throw Error(ErrorKind::DivisionByZero, "series divisor needs an invertible constant term");
  PowerSeries r(a.variable_, std::min(a.order_, b.order_));
  for (int n = 0; n <= r.order_; ++n) {
    PiLaurent s = a.coeff(n);
    for (int k = 1; k <= n; ++k) s -= b.coeff(k) * r.coeff(n - k);
    r.coeffs_[static_cast<std::size_t>(n)] = s.divided_by(b0);
  }
  return r;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
  if (!inner.coeff(0).is_zero()) throw std::invalid_argument("inner series must have zero constant term");
  const int order = std::min(order_, inner.order_);
  PowerSeries result(inner.variable_, order);
  for (int k = order; k >= 0; --k) result = result * inner + constant(coeff(k), inner.variable_, order);
  return result;
}

PowerSeries sin_series(const std::string& variable, int order) {
  std::vector<PiLaurent> c(static_cast<std::size_t>(order) + 1, zero());
  for (int k = 1; k <= order; k += 2)
    c[static_cast<std::size_t>(k)] = PiLaurent(Rational(mpz_class((k / 2) % 2 ? -1 : 1), factorial(k))).widened(kSeriesWindow);
  return PowerSeries(variable, c, order);
}

PowerSeries cos_series(const std::string& variable, int order) {
  std::vector<PiLaurent> c(static_cast<std::size_t>(order) + 1, zero());
  for (int k = 0; k <= order; k += 2)
    c[static_cast<std::size_t>(k)] = PiLaurent(Rational(mpz_class((k / 2) % 2 ? -1 : 1), factorial(k))).widened(kSeriesWindow);
  return PowerSeries(variable, c, order);
}

PowerSeries sinc_series(const std::string& variable, int order) {
  std::vector<PiLaurent> c(static_cast<std::size_t>(order) + 1, zero());
  for (int k = 0; k <= order; k += 2)
    c[static_cast<std::size_t>(k)] = PiLaurent(Rational(mpz_class((k / 2) % 2 ? -1 : 1), factorial(k + 1))).widened(kSeriesWindow);
  return PowerSeries(variable, c, order);
}

PowerSeries geometric_series(const std::string& variable, int order) {
  return PowerSeries(variable, std::vector<PiLaurent>(static_cast<std::size_t>(order) + 1, q(1, 1)), order);
}

PowerSeries expansion_at_pi_half(int order) {
  check_order(order);
  const std::string v = "y";
  const PowerSeries y = PowerSeries::identity(v, order);
  const PiLaurent pi = PiLaurent::pi(1, kSeriesWindow);
  // cot(y) (pi^2 - 4x^2) / x with pi^2 - 4x^2 = 4y(pi - y) and x = pi/2 - y.
  const PowerSeries four_pi_minus_y = q(4, 1) * (PowerSeries::constant(pi, v, order) - y);
  const PowerSeries cot_times_y = cos_series(v, order) / sinc_series(v, order);
  const PiLaurent two_over_pi = PiLaurent::monomial(2, -1, kSeriesWindow);
  const PowerSeries inverse_x = two_over_pi * geometric_series(v, order).compose(two_over_pi * y);
  return four_pi_minus_y * cot_times_y * inverse_x;
}

PowerSeries expansion_at_zero(int order) {
  check_order(order);
  const std::string v = "x";
  const PowerSeries x = PowerSeries::identity(v, order);
  const PowerSeries q_series = PowerSeries::constant(PiLaurent::pi(2, kSeriesWindow), v, order) - q(4, 1) * (x * x);
  return q_series * (sinc_series(v, order) / cos_series(v, order));
}

}  // namespace tanbound::oracle
