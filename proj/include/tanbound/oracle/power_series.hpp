#pragma once

#include <string>
#include <vector>

#include "tanbound/core/pi_laurent.hpp"

namespace tanbound::oracle {

/// Deep enough for order-12 expansions at pi/2, whose coefficients reach pi^-13.
inline constexpr PowerWindow kSeriesWindow{-16, 16};

/// Truncated power series sum_{k<=order} c_k v^k with exact PiLaurent
/// coefficients. Binary operations truncate to the smaller order.
class PowerSeries {
 public:
  PowerSeries(std::string variable, int order);
  PowerSeries(std::string variable, std::vector<PiLaurent> coeffs, int order);

  static PowerSeries constant(const PiLaurent& c, std::string variable, int order);
  /// The series of the variable itself.
  static PowerSeries identity(std::string variable, int order);

  const std::string& variable() const { return variable_; }
  int order() const { return order_; }
  const PiLaurent& coeff(int k) const;
  const std::vector<PiLaurent>& coeffs() const { return coeffs_; }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PiLaurent& s, const PowerSeries& a);
  /// Error(DivisionByZero) unless b's constant term is a nonzero monomial.
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);

  /// this(inner(v)); inner must have zero constant term.
  PowerSeries compose(const PowerSeries& inner) const;

 private:
  std::string variable_;
  std::vector<PiLaurent> coeffs_;
  int order_;
};

PowerSeries sin_series(const std::string& variable, int order);
PowerSeries cos_series(const std::string& variable, int order);
/// sin(v)/v.
PowerSeries sinc_series(const std::string& variable, int order);
/// 1/(1 - v).
PowerSeries geometric_series(const std::string& variable, int order);

/// (pi^2 - 4x^2) tan(x)/x in y = pi/2 - x, via
/// 4 (pi - y) cos(y) / (sinc(y) (pi/2 - y)).
PowerSeries expansion_at_pi_half(int order);
/// (pi^2 - 4x^2) tan(x)/x in x, via (pi^2 - 4x^2) sinc(x)/cos(x).
PowerSeries expansion_at_zero(int order);

inline constexpr int kMaxExpansionOrder = 12;

}  // namespace tanbound::oracle
