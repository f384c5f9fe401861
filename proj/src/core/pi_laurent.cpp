#include "tanbound/core/pi_laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tanbound/core/error.hpp"
#include "tanbound/core/poly.hpp"

namespace tanbound {

// ---------------------------------------------------------------------------
// PiEnclosure

const PiEnclosure& PiEnclosure::standard() {
  static const PiEnclosure pi(enclose(Rational::parse(kLiteral)), 53);
  return pi;
}

PiEnclosure PiEnclosure::with_precision(int bits) {
  if (bits < 2 || bits > 53) throw std::invalid_argument("pi precision must be within [2, 53] bits");
  const Interval& base = standard().value();
  const double scale = std::ldexp(1.0, bits - 2);  // pi lies in [2, 4)
  return PiEnclosure(Interval(std::floor(base.lo() * scale) / scale, std::ceil(base.hi() * scale) / scale), bits);
}

Interval PiEnclosure::power(int k) const {
  if (k == 0) return Interval(1.0);
  if (k > 0) return pow(value_, static_cast<unsigned>(k));
  return Interval(1.0) / pow(value_, static_cast<unsigned>(-k));
}

Interval PiEnclosure::half() const { return Interval(value_.lo() * 0.5, value_.hi() * 0.5); }

// ---------------------------------------------------------------------------
// PiLaurent

PiLaurent::PiLaurent(const Rational& constant) {
  if (!constant.is_zero()) coeffs_.emplace(0, constant);
}

PiLaurent PiLaurent::monomial(const Rational& coeff, int power, PowerWindow window) {
  PiLaurent r;
  r.window_ = window;
  if (!coeff.is_zero()) r.coeffs_.emplace(power, coeff);
  r.check_window();
  return r;
}

Rational PiLaurent::coeff(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

PiLaurent PiLaurent::widened(PowerWindow window) const {
  PiLaurent r = *this;
  r.window_ = PowerWindow::hull(window_, window);
  return r;
}

void PiLaurent::check_window() const {
  if (coeffs_.empty()) return;
  if (!window_.contains(min_power()) || !window_.contains(max_power())) {
    std::ostringstream msg;
    msg << "power of pi outside window [" << window_.lo << ", " << window_.hi << "] in " << str();
    throw Error(ErrorKind::PowerWindowOverflow, msg.str());
  }
}

PiLaurent PiLaurent::operator-() const {
  PiLaurent r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

PiLaurent& PiLaurent::operator+=(const PiLaurent& rhs) {
  window_ = PowerWindow::hull(window_, rhs.window_);
  for (const auto& [k, c] : rhs.coeffs_) {
    auto [it, inserted] = coeffs_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

PiLaurent& PiLaurent::operator-=(const PiLaurent& rhs) { return *this += -rhs; }

PiLaurent& PiLaurent::operator*=(const PiLaurent& rhs) {
  std::map<int, Rational> product;
  for (const auto& [i, a] : coeffs_)
    for (const auto& [j, b] : rhs.coeffs_) product[i + j] += a * b;
  std::erase_if(product, [](const auto& kv) { return kv.second.is_zero(); });
  coeffs_ = std::move(product);
  window_ = PowerWindow::hull(window_, rhs.window_);
  check_window();
  return *this;
}

PiLaurent& PiLaurent::operator*=(const Rational& rhs) {
  if (rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= rhs;
  return *this;
}

PiLaurent PiLaurent::divided_by(const PiLaurent& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero element");
  if (!divisor.is_monomial())
    throw Error(ErrorKind::DivisionByZero, "divisor " + divisor.str() + " is not invertible in the ring");
  const auto& [dk, dc] = *divisor.coeffs_.begin();
  PiLaurent r;
  r.window_ = PowerWindow::hull(window_, divisor.window_);
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k - dk, c / dc);
  r.check_window();
  return r;
}

namespace {

std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(n)) s += digits[c - '0'];
  return s;
}

std::string pi_power_text(int k) { return "π" + (k == 1 ? std::string() : superscript(k)); }

std::string term_text(const Rational& magnitude, int power) {
  const std::string n = magnitude.num().get_str();
  const std::string d = magnitude.den().get_str();
  const bool unit_den = magnitude.den() == 1;
  if (power == 0) return magnitude.str();
  if (power > 0) return (n == "1" ? "" : n) + pi_power_text(power) + (unit_den ? "" : "/" + d);
  return n + "/" + (unit_den ? pi_power_text(-power) : "(" + d + pi_power_text(-power) + ")");
}

}  // namespace

std::string PiLaurent::str() const {
  if (coeffs_.empty()) return "0";
  std::vector<std::pair<int, Rational>> terms(coeffs_.begin(), coeffs_.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (std::abs(a.first) != std::abs(b.first)) return std::abs(a.first) > std::abs(b.first);
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms) {
    const bool negative = c.sign() < 0;
    if (first) out += negative ? "−" : "";
    else out += negative ? " − " : " + ";
    out += term_text(c.abs(), k);
    first = false;
  }
  return out;
}

Interval pilaurent_eval(const PiLaurent& p, const PiEnclosure& pi) {
  if (p.is_zero()) return Interval(0.0);
  std::optional<Interval> sum;
  for (const auto& [k, c] : p.coeffs()) {
    Interval term = enclose(c);
    if (k != 0) term = k > 0 ? term * pi.power(k) : term / pi.power(-k);
    sum = sum ? *sum + term : term;
  }
  return *sum;
}

// ---------------------------------------------------------------------------
// Poly helpers

IntervalPoly lift(const PiPoly& p, const PiEnclosure& pi) {
  std::vector<Interval> c;
  c.reserve(p.coeffs().size());
  for (const auto& k : p.coeffs()) c.push_back(pilaurent_eval(k, pi));
  return IntervalPoly(std::move(c));
}

Interval horner_enclosure(const IntervalPoly& p, const Interval& x) { return p.eval(x); }

PiLaurent eval_exact(const PiPoly& p, const Rational& x) { return p.eval(x); }

PiPoly widened(const PiPoly& p, PowerWindow window) {
  std::vector<PiLaurent> c;
  c.reserve(p.coeffs().size());
  for (const auto& k : p.coeffs()) c.push_back(k.widened(window));
  return PiPoly(std::move(c));
}

std::string to_string(const PiPoly& p, const char* variable) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  for (int k = p.degree(); k >= 0; --k) {
    const PiLaurent& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    os << "  " << variable << "^" << k << ": " << c.str() << "\n";
  }
  return os.str();
}

}  // namespace tanbound
