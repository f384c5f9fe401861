#include "tanbound/bounds.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tanbound/core/error.hpp"
#include "tanbound/functions.hpp"

namespace tanbound::bounds {

namespace {

PiLaurent pi_pow(const Rational& c, int k) { return PiLaurent::monomial(c, k); }

Rational q(long n, long d) { return Rational(mpz_class(n), mpz_class(d)); }

PiPoly x_times(const PiPoly& p) { return PiPoly::x() * p; }

PiPoly denominator_poly() { return PiPoly{pi_pow(1, 2), PiLaurent(0), PiLaurent(-4)}; }

PiPoly build_numerator(BoundKind kind) {
  switch (kind) {
    case BoundKind::BsLower:
      return PiPoly{PiLaurent(0), PiLaurent(8)};
    case BoundKind::BsUpper:
      return PiPoly{PiLaurent(0), pi_pow(1, 2)};
    case BoundKind::Thm1Lower:
      return x_times(PiPoly::constant(8) + a_poly());
    case BoundKind::Thm1Upper:
      return x_times(PiPoly::constant(8) + b_poly());
    case BoundKind::Thm2Upper:
      return x_times(thm2_numerator());
  }
  throw std::logic_error("unknown bound kind");
}

struct KindData {
  BoundFormula formula;
  IntervalPoly numerator_over_x;
  IntervalPoly denominator;
  // N - q * (t_0 + t_1 x^2 + t_2 x^4), exact; pairs with the order-3 tail.
  IntervalPoly taylor_residual;
};

constexpr int kMarginOrder = 3;

const KindData& data(BoundKind kind) {
  static const std::map<BoundKind, KindData> table = [] {
    std::map<BoundKind, KindData> t;
    const auto coeffs = functions::tanx_over_x_coefficients(kMarginOrder);
    PiPoly taylor;
    for (int k = 0; k < kMarginOrder; ++k) taylor = taylor + PiPoly::monomial(PiLaurent(coeffs[static_cast<std::size_t>(k)]), 2 * k);
    for (BoundKind kind : kAllKinds) {
      BoundFormula f{build_numerator(kind), denominator_poly()};
      const PiPoly n = f.tan_over_x_numerator();
      const PiPoly residual = n - f.denominator * taylor;
      t.emplace(kind, KindData{f, lift(n), lift(f.denominator), lift(residual)});
    }
    return t;
  }();
  return table.at(kind);
}

Rational threshold_lower_bound(const PiLaurent& p) {
  if (p.is_rational()) return p.coeff(0);
  return Rational::from_double(pilaurent_eval(p).lo());
}

Interval denominator_enclosure(BoundKind kind, const Interval& x) {
  Interval d = horner_enclosure(data(kind).denominator, x);
  // Same quantity in factored form, which keeps relative accuracy near pi/2.
  const Interval pi = PiEnclosure::standard().value();
  d = refine(d, (pi - Interval(2.0) * x) * (pi + Interval(2.0) * x));
  if (d.lo() < 1e-300) throw Error(ErrorKind::PoleProximity, "denominator pi^2 - 4x^2 is not certifiably positive");
  return d;
}

void require_valid(BoundKind kind, const Interval& x) {
  const Validity& v = validity(kind);
  if (!v.contains(x)) {
    std::ostringstream os;
    os << to_string(kind) << " is only valid on " << v.str() << ", got " << x;
    throw Error(ErrorKind::OutsideValidity, os.str());
  }
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::BsLower: return "BS_LOWER";
    case BoundKind::BsUpper: return "BS_UPPER";
    case BoundKind::Thm1Lower: return "THM1_LOWER";
    case BoundKind::Thm1Upper: return "THM1_UPPER";
    case BoundKind::Thm2Upper: return "THM2_UPPER";
  }
  return "?";
}

std::string_view to_string(Side side) { return side == Side::Lower ? "lower" : "upper"; }

std::optional<BoundKind> parse_bound_kind(std::string_view text) {
  for (BoundKind k : kAllKinds)
    if (to_string(k) == text) return k;
  return std::nullopt;
}

Side side_of(BoundKind kind) {
  return (kind == BoundKind::BsLower || kind == BoundKind::Thm1Lower) ? Side::Lower : Side::Upper;
}

bool Validity::contains(const Rational& x) const {
  if (lo.is_rational()) {
    if (!(x > lo.coeff(0))) return false;
  } else if (!(enclose(x).lo() > pilaurent_eval(lo).hi())) {
    return false;
  }
  if (hi.is_rational()) return x < hi.coeff(0);
  return x < threshold_lower_bound(hi);
}

bool Validity::contains(const Interval& x) const {
  const Rational xlo = Rational::from_double(x.lo());
  const Rational xhi = Rational::from_double(x.hi());
  const bool above = lo.is_rational() ? xlo > lo.coeff(0) : x.lo() > pilaurent_eval(lo).hi();
  const bool below = hi.is_rational() ? xhi < hi.coeff(0) : xhi < threshold_lower_bound(hi);
  return above && below;
}

std::string Validity::str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }

const Validity& validity(BoundKind kind) {
  static const Validity whole{PiLaurent(0), pi_pow(q(1, 2), 1)};
  static const Validity thm1_lower{PiLaurent(q(373, 1000)), pi_pow(q(1, 2), 1)};
  static const Validity thm1_upper{PiLaurent(q(301, 1000)), pi_pow(q(1, 2), 1)};
  static const Validity thm2{PiLaurent(0), PiLaurent(q(1371, 1000))};
  switch (kind) {
    case BoundKind::BsLower:
    case BoundKind::BsUpper: return whole;
    case BoundKind::Thm1Lower: return thm1_lower;
    case BoundKind::Thm1Upper: return thm1_upper;
    case BoundKind::Thm2Upper: return thm2;
  }
  throw std::logic_error("unknown bound kind");
}

PiPoly BoundFormula::tan_over_x_numerator() const {
  if (!numerator.coeff(0).is_zero()) throw std::logic_error("bound numerator lacks the factor x");
  std::vector<PiLaurent> c;
  for (int k = 1; k <= numerator.degree(); ++k) c.push_back(numerator.coeff(k));
  return PiPoly(std::move(c));
}

const BoundFormula& formula(BoundKind kind) { return data(kind).formula; }

const PiLaurent& shift_coefficient(int k) {
  static const PiLaurent c1 = pi_pow(8, -1);
  static const PiLaurent c2 = pi_pow(16, -2) - PiLaurent(q(8, 3));
  static const PiLaurent c3 = pi_pow(32, -3) - pi_pow(q(8, 3), -1);
  switch (k) {
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
  }
  throw std::out_of_range("shift coefficient index must be 1, 2 or 3");
}

const PiPoly& a_poly() {
  static const PiPoly a{PiLaurent(8) - pi_pow(q(2, 3), 2), pi_pow(q(8, 3), 1) - pi_pow(24, -1),
                        pi_pow(16, -2) - PiLaurent(q(8, 3))};
  return a;
}

const PiPoly& b_poly() {
  static const PiPoly b{PiLaurent(12) - pi_pow(1, 2), pi_pow(q(14, 3), 1) - pi_pow(48, -1),
                        pi_pow(64, -2) - PiLaurent(q(20, 3)), pi_pow(q(8, 3), -1) - pi_pow(32, -3)};
  return b;
}

PiPoly shifted_form(std::span<const PiLaurent> coefficients) {
  const PiPoly y{pi_pow(q(1, 2), 1), PiLaurent(-1)};
  PiPoly result;
  PiPoly power = PiPoly::constant(1);
  for (const PiLaurent& c : coefficients) {
    power = power * y;
    result = result + c * power;
  }
  return result;
}

const PiPoly& thm2_numerator() {
  static const PiPoly n{pi_pow(1, 2), PiLaurent(0), pi_pow(q(1, 3), 2) - PiLaurent(4), PiLaurent(0),
                        pi_pow(q(2, 15), 2) - PiLaurent(q(4, 3))};
  return n;
}

Interval eval_bound(BoundKind kind, const Interval& x) {
  require_valid(kind, x);
  const Interval d = denominator_enclosure(kind, x);
  return horner_enclosure(data(kind).numerator_over_x, x) / d;
}

Interval margin(BoundKind kind, const Interval& x) {
  const KindData& k = data(kind);
  std::optional<Interval> near_zero;
  std::optional<Interval> near_pole;
  const Interval n = horner_enclosure(k.numerator_over_x, x);
  try {
    const Interval qx = horner_enclosure(k.denominator, x);
    const Interval tail = functions::tanx_over_x_tail_enclosure(x, kMarginOrder);
    near_zero = horner_enclosure(k.taylor_residual, x) - qx * pow(x, 2 * kMarginOrder) * tail;
  } catch (const Error&) {
  }
  try {
    near_pole = n - functions::scaled_tanx_over_x_enclosure(x);
  } catch (const Error&) {
  }
  if (near_zero && near_pole) return refine(*near_zero, *near_pole);
  if (near_zero) return *near_zero;
  if (near_pole) return *near_pole;
  return n - denominator_enclosure(kind, x) * functions::tanx_over_x_enclosure(x);
}

Enclosure best_enclosure(const Interval& x) {
  const double pole = PiEnclosure::standard().half().lo();
  if (!(x.lo() > 0.0) || !(x.hi() < pole)) {
    std::ostringstream os;
    os << "x must lie in (0, pi/2), got " << x;
    throw Error(ErrorKind::OutsideValidity, os.str());
  }
  if (pole - x.hi() < kPoleGuard) {
    std::ostringstream os;
    os << "x is within " << kPoleGuard << " of pi/2";
    throw Error(ErrorKind::PoleProximity, os.str());
  }
  std::optional<double> lo;
  std::optional<double> hi;
  std::vector<Witness> lo_w;
  std::vector<Witness> hi_w;
  for (BoundKind kind : kAllKinds) {
    if (!validity(kind).contains(x)) continue;
    const Interval v = eval_bound(kind, x);
    if (side_of(kind) == Side::Lower) {
      if (!lo || v.lo() > *lo) {
        lo = v.lo();
        lo_w.clear();
      }
      if (v.lo() == *lo) lo_w.push_back({kind, Side::Lower});
    } else {
      if (!hi || v.hi() < *hi) {
        hi = v.hi();
        hi_w.clear();
      }
      if (v.hi() == *hi) hi_w.push_back({kind, Side::Upper});
    }
  }
  if (!lo || !hi) throw Error(ErrorKind::OutsideValidity, "no lower or no upper bound is valid at x");
  if (*lo > *hi) throw std::logic_error("bound enclosure is empty: a lower bound exceeds an upper bound");
  Enclosure e{*lo, *hi, std::move(lo_w)};
  e.witnesses.insert(e.witnesses.end(), hi_w.begin(), hi_w.end());
  return e;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Separation check_separation(BoundKind kind, const Interval& x) {
  Separation s{kind, Verdict::Inconclusive, eval_bound(kind, x), functions::tanx_over_x_enclosure(x), Interval()};
  const Interval qx = denominator_enclosure(kind, x);
  s.gap = refine(s.bound - s.truth, margin(kind, x) / qx);
  const bool lower = side_of(kind) == Side::Lower;
  if (lower ? s.gap.is_negative() : s.gap.is_positive())
    s.verdict = Verdict::Holds;
  else if (lower ? s.gap.is_positive() : s.gap.is_negative())
    s.verdict = Verdict::Violated;
  return s;
}

std::vector<TightnessRow> tightness_profile(std::span<const Rational> grid, std::span<const BoundKind> kinds) {
  std::vector<TightnessRow> rows;
  rows.reserve(grid.size() * kinds.size());
  for (const Rational& x : grid) {
    const Interval xi = enclose(x);
    for (BoundKind kind : kinds) {
      TightnessRow row{x, kind, std::nullopt, std::nullopt, std::nullopt, {}};
      try {
        if (!validity(kind).contains(x)) {
          std::ostringstream os;
          os << to_string(kind) << " is only valid on " << validity(kind).str() << ", got " << x.str();
          throw Error(ErrorKind::OutsideValidity, os.str());
        }
        const Separation s = check_separation(kind, xi);
        row.bound = s.bound;
        row.truth = s.truth;
        row.gap = s.gap;
      } catch (const Error& e) {
        row.error = std::string(tanbound::to_string(e.kind())) + ": " + e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void put_pair(std::ostream& os, const std::optional<Interval>& v) {
  if (v)
    os << ',' << format_double(v->lo()) << ',' << format_double(v->hi());
  else
    os << ",,";
}

void put_pair(nlohmann::json& j, const char* lo, const char* hi, const std::optional<Interval>& v) {
  j[lo] = v ? nlohmann::json(v->lo()) : nlohmann::json();
  j[hi] = v ? nlohmann::json(v->hi()) : nlohmann::json();
}

}  // namespace

std::string to_csv(std::span<const TightnessRow> rows) {
  bool errors = false;
  for (const auto& r : rows) errors = errors || !r.error.empty();
  std::ostringstream os;
  os << kCsvHeader << (errors ? ",error" : "") << '\n';
  for (const auto& r : rows) {
    os << format_double(r.x.to_double()) << ',' << to_string(r.kind);
    put_pair(os, r.bound);
    put_pair(os, r.truth);
    put_pair(os, r.gap);
    if (errors) os << ',' << csv_field(r.error);
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(std::span<const TightnessRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["x"] = r.x.to_double();
    j["kind"] = std::string(to_string(r.kind));
    put_pair(j, "bound_lo", "bound_hi", r.bound);
    put_pair(j, "true_lo", "true_hi", r.truth);
    put_pair(j, "gap_lo", "gap_hi", r.gap);
    if (!r.error.empty()) j["error"] = r.error;
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::json to_json(const Enclosure& enclosure) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& wi : enclosure.witnesses)
    w.push_back({{"kind", std::string(to_string(wi.kind))}, {"side", std::string(to_string(wi.side))}});
  return {{"lo", enclosure.lo}, {"hi", enclosure.hi}, {"witnesses", w}};
}

Enclosure enclosure_from_json(const nlohmann::json& j) {
  Enclosure e{j.at("lo").get<double>(), j.at("hi").get<double>(), {}};
  for (const auto& w : j.at("witnesses")) {
    const auto kind = parse_bound_kind(w.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorKind::Parse, "unknown bound kind in enclosure record");
    const std::string side = w.at("side").get<std::string>();
    if (side != "lower" && side != "upper") throw Error(ErrorKind::Parse, "witness side must be lower or upper");
    e.witnesses.push_back({*kind, side == "lower" ? Side::Lower : Side::Upper});
  }
  return e;
}

}  // namespace tanbound::bounds
