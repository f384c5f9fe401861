#pragma once

#include <map>
#include <string>

#include "tanbound/core/interval.hpp"
#include "tanbound/core/pi_enclosure.hpp"
#include "tanbound/core/rational.hpp"

namespace tanbound {

/// Range of powers of pi a PiLaurent may hold.
struct PowerWindow {
  int lo = -3;
  int hi = 6;

  bool contains(int k) const { return lo <= k && k <= hi; }
  static PowerWindow hull(PowerWindow a, PowerWindow b) {
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
  }
  friend bool operator==(PowerWindow, PowerWindow) = default;
};

/// Exact value sum_k c_k * pi^k with rational c_k. Zero coefficients are
/// never stored, so equality is map equality. Results of ring operations
/// live in the hull of the operand windows; a power outside it throws
/// Error(PowerWindowOverflow).
class PiLaurent {
 public:
  PiLaurent() = default;
  PiLaurent(const Rational& constant);  // NOLINT(google-explicit-constructor)
  PiLaurent(long constant) : PiLaurent(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static PiLaurent monomial(const Rational& coeff, int power, PowerWindow window = {});
  static PiLaurent pi(int power = 1, PowerWindow window = {}) { return monomial(1, power, window); }

  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int power) const;
  PowerWindow window() const { return window_; }
  PiLaurent widened(PowerWindow window) const;

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0); }
  bool is_monomial() const { return coeffs_.size() == 1; }
  /// Smallest / largest stored power; 0 for the zero element.
  int min_power() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  int max_power() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  PiLaurent operator-() const;
  PiLaurent& operator+=(const PiLaurent& rhs);
  PiLaurent& operator-=(const PiLaurent& rhs);
  PiLaurent& operator*=(const PiLaurent& rhs);
  PiLaurent& operator*=(const Rational& rhs);

  friend PiLaurent operator+(PiLaurent a, const PiLaurent& b) { return a += b; }
  friend PiLaurent operator-(PiLaurent a, const PiLaurent& b) { return a -= b; }
  friend PiLaurent operator*(PiLaurent a, const PiLaurent& b) { return a *= b; }
  friend PiLaurent operator*(PiLaurent a, const Rational& b) { return a *= b; }
  friend PiLaurent operator*(const Rational& a, PiLaurent b) { return b *= a; }
  friend PiLaurent operator*(PiLaurent a, long b) { return a *= Rational(b); }
  friend PiLaurent operator*(long a, PiLaurent b) { return b *= Rational(a); }

  /// Division by an invertible (monomial) element; throws DivisionByZero otherwise.
  PiLaurent divided_by(const PiLaurent& monomial_divisor) const;

  friend bool operator==(const PiLaurent& a, const PiLaurent& b) { return a.coeffs_ == b.coeffs_; }

  /// Human form, e.g. "16/π² − 8/3", "32/π³ − 8/(3π)", "π²/3 − 4".
  std::string str() const;

 private:
  void check_window() const;

  std::map<int, Rational> coeffs_;
  PowerWindow window_;
};

/// Certified value of p with outward rounding. Throws Error(EnclosureBlowup)
/// if an endpoint overflows.
Interval pilaurent_eval(const PiLaurent& p, const PiEnclosure& pi = PiEnclosure::standard());

}  // namespace tanbound
