#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tanbound/core/interval.hpp"
#include "tanbound/core/pi_laurent.hpp"

namespace tanbound {

namespace detail {
inline bool is_exact_zero(const PiLaurent& c) { return c.is_zero(); }
inline bool is_exact_zero(const Rational& c) { return c.is_zero(); }
inline bool is_exact_zero(const Interval& c) { return c.lo() == 0.0 && c.hi() == 0.0; }
}  // namespace detail

/// Dense univariate polynomial, coefficients in ascending order. Trailing
/// exact zeros are trimmed so degree() is meaningful for exact rings.
template <class Coeff>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly constant(const Coeff& c) { return Poly(std::vector<Coeff>{c}); }
  static Poly monomial(const Coeff& c, int degree) {
    std::vector<Coeff> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(Coeff(1L), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : Coeff();
  }
  Coeff leading() const { return coeffs_.empty() ? Coeff() : coeffs_.back(); }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Coeff> d;
    d.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Coeff(static_cast<long>(k)));
    return Poly(std::move(d));
  }
  Poly derivative(int order) const {
    Poly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] + rhs.coeffs_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& rhs) { return *this += -rhs; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Coeff> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] = r[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Coeff& s, const Poly& p) {
    std::vector<Coeff> r;
    r.reserve(p.coeffs_.size());
    for (const auto& c : p.coeffs_) r.push_back(s * c);
    return Poly(std::move(r));
  }

  Poly pow(unsigned n) const {
    Poly result = constant(Coeff(1L));
    for (unsigned i = 0; i < n; ++i) result = result * *this;
    return result;
  }

  /// p(inner(x)).
  Poly compose(const Poly& inner) const {
    Poly result;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) result = result * inner + constant(*it);
    return result;
  }

  /// Horner evaluation; X may be any type that mixes with Coeff.
  template <class X>
  auto eval(const X& x) const -> decltype(Coeff() * x + Coeff()) {
    using R = decltype(Coeff() * x + Coeff());
    if (coeffs_.empty()) return R(Coeff());
    R acc = R(coeffs_.back());
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && detail::is_exact_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using PiPoly = Poly<PiLaurent>;
using IntervalPoly = Poly<Interval>;

/// Replace every coefficient by its certified enclosure.
IntervalPoly lift(const PiPoly& p, const PiEnclosure& pi = PiEnclosure::standard());

/// Interval Horner of the lifted polynomial over x.
Interval horner_enclosure(const IntervalPoly& p, const Interval& x);

/// Exact value at a rational point.
PiLaurent eval_exact(const PiPoly& p, const Rational& x);

/// Widen every coefficient's power window.
PiPoly widened(const PiPoly& p, PowerWindow window);

/// Multi-line "k: coeff" rendering for diagnostics.
std::string to_string(const PiPoly& p, const char* variable = "x");

}  // namespace tanbound
