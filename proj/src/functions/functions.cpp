#include "tanbound/functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "tanbound/core/error.hpp"
#include "tanbound/core/pi_enclosure.hpp"

namespace tanbound::functions {

namespace {

const PiEnclosure& pi() { return PiEnclosure::standard(); }

Interval quarter_pi() { return Interval(pi().value().lo() * 0.25, pi().value().hi() * 0.25); }

// sum_{n>=0} (-1)^n z^n / (d(1) ... d(n)), nested as
// 1 - z/d(1) (1 - z/d(2) (1 - ...)) so that most roundings happen at small
// magnitude. Alternating with decreasing magnitudes for the arguments used
// here, so the first omitted term bounds the remainder.
template <class Denominator>
Interval alternating_series(const Interval& z, Denominator denominator, int max_terms) {
  const double zmag = z.mag();
  double term = 1.0;
  int n = 1;
  for (; n <= max_terms; ++n) {
    term = next_up(next_up(term * zmag) / denominator(n));
    if (term < kSeriesCutoff) break;
  }
  // terms 0 .. last are summed; `term` bounds term last + 1
  const int last = std::min(n, max_terms) - 1;
  Interval acc(1.0);
  for (int k = last; k >= 1; --k) acc = Interval(1.0) - z / Interval(denominator(k)) * acc;
  return acc + symmetric(term);
}

Interval sin_series(const Interval& x, int max_terms) {
  return x * alternating_series(sqr(x), [](int n) { return 2.0 * n * (2.0 * n + 1.0); }, max_terms);
}

Interval cos_series(const Interval& x, int max_terms) {
  return alternating_series(sqr(x), [](int n) { return (2.0 * n - 1.0) * (2.0 * n); }, max_terms);
}

// sin(y)/y
Interval sinc_series(const Interval& y, int max_terms) {
  return alternating_series(sqr(y), [](int n) { return 2.0 * n * (2.0 * n + 1.0); }, max_terms);
}

// x = r + k pi/2 with k from the midpoint. The identities used below hold
// for every point, so the whole interval shares one k.
struct Reduced {
  Interval r;
  int quadrant = 0;  // k mod 4
};

Reduced reduce(const Interval& x) {
  if (x.width() >= 1.0) throw Error(ErrorKind::ReductionFailure, "argument " + x.str() + " is wider than 1");
  const double k = std::nearbyint(x.mid() / pi().half().mid());
  if (std::fabs(k) > 8.0) throw Error(ErrorKind::ReductionFailure, "argument " + x.str() + " outside supported range");
  Reduced out{x, 0};
  if (k != 0.0) {
    out.r = x - Interval(k) * pi().half();
    out.quadrant = static_cast<int>(std::fmod(std::fmod(k, 4.0) + 4.0, 4.0));
  }
  if (out.r.mag() > 2.0) throw Error(ErrorKind::ReductionFailure, "cannot certify the quadrant of " + x.str());
  return out;
}

// tan via the addition formula around the nearest multiple of pi/4; only
// for narrow arguments, where the reduced tangent stays well inside (-1, 1).
std::optional<Interval> tan_by_octant(const Interval& x, int max_terms) {
  if (x.width() > 1e-3) return std::nullopt;
  const Interval eighth = pi().value() / Interval(4.0);
  const double j = std::nearbyint(x.mid() / eighth.mid());
  if (std::fabs(j) > 16.0) return std::nullopt;
  const Interval s = j == 0.0 ? x : x - Interval(j) * eighth;
  const Interval t = sin_series(s, max_terms) / cos_series(s, max_terms);
  const Interval one(1.0);
  try {
    switch (static_cast<int>(std::fmod(std::fmod(j, 4.0) + 4.0, 4.0))) {
      case 0: return t;
      // (1 + t)/(1 - t) and (t - 1)/(1 + t), rounded at small magnitude
      case 1: return one + Interval(2.0) * t / (one - t);
      case 2: return -(one / t);
      default: return Interval(2.0) * t / (one + t) - one;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Split point for arctan reduction, just below sqrt(2) - 1 so that
// (t - 1)/(t + 1) stays within the same bound on [kSplit, 1].
constexpr double kSplit = 0.4142;

// sum_{n>=first} (-1)^n u^(2n+1)/(2n+1) for |u| <= kSplit.
Interval atan_series(const Interval& u, int first, int max_terms) {
  const Interval z = sqr(u);
  Interval power = u;
  for (int n = 0; n < first; ++n) power = power * z;
  auto term_at = [&](int n) {
    Interval t = power / Interval(2.0 * n + 1.0);
    return n % 2 == 0 ? t : -t;
  };
  Interval sum = term_at(first);
  for (int n = first + 1; n < first + max_terms; ++n) {
    power = power * z;
    const Interval term = term_at(n);
    if (term.mag() < kSeriesCutoff) return sum + symmetric(term.mag());
    sum = sum + term;
  }
  power = power * z;
  return sum + symmetric(term_at(first + max_terms).mag());
}

void merge(std::optional<Interval>& acc, const Interval& piece) { acc = acc ? Interval::hull(*acc, piece) : piece; }

// arctan on t >= 0, split at fixed points so that the result is monotone in t.
Interval atan_nonnegative(const Interval& t, int max_terms, bool allow_invert) {
  std::optional<Interval> result;
  if (t.lo() <= kSplit) merge(result, atan_series(Interval(t.lo(), std::fmin(t.hi(), kSplit)), 0, max_terms));
  const double middle_hi = allow_invert ? 1.0 : t.hi();
  if (t.hi() >= kSplit && t.lo() <= middle_hi) {
    const Interval piece(std::fmax(t.lo(), kSplit), std::fmin(t.hi(), middle_hi));
    const Interval u = (piece - Interval(1.0)) / (piece + Interval(1.0));
    merge(result, quarter_pi() + atan_series(u, 0, max_terms));
  }
  if (allow_invert && t.hi() >= 1.0) {
    const Interval piece(std::fmax(t.lo(), 1.0), t.hi());
    merge(result, pi().half() - atan_nonnegative(Interval(1.0) / piece, max_terms, false));
  }
  return *result;
}

// Coefficients for tanx_over_x_tail_enclosure.
constexpr int kMaxTailOrder = 4;
constexpr int kTailTerms = 26;

struct TailTable {
  std::vector<Interval> coeffs;  // enclosures of e_n, n = order .. order + kTailTerms - 1
  Interval constant;             // 1 + sum_{j<order} |t_j|
};

Rational factorial(int n) {
  Rational r(1);
  for (int k = 2; k <= n; ++k) r *= Rational(k);
  return r;
}

const std::array<TailTable, kMaxTailOrder + 1>& tail_tables() {
  static const auto tables = [] {
    std::array<TailTable, kMaxTailOrder + 1> out;
    const auto t = tanx_over_x_coefficients(kMaxTailOrder);
    for (int order = 0; order <= kMaxTailOrder; ++order) {
      Rational constant(1);
      for (int j = 0; j < order; ++j) constant += t[static_cast<std::size_t>(j)].abs();
      out[static_cast<std::size_t>(order)].constant = enclose(constant);
      for (int n = order; n < order + kTailTerms; ++n) {
        // e_n = s_n - sum_{j<order} t_j c_{n-j}, with s_n, c_m the sinc and cos coefficients.
        Rational e = Rational(n % 2 == 0 ? 1 : -1) / factorial(2 * n + 1);
        for (int j = 0; j < order; ++j) {
          const int m = n - j;
          e -= t[static_cast<std::size_t>(j)] * Rational(m % 2 == 0 ? 1 : -1) / factorial(2 * m);
        }
        out[static_cast<std::size_t>(order)].coeffs.push_back(enclose(e));
      }
    }
    return out;
  }();
  return tables;
}

}  // namespace

std::string_view to_string(Fn fn) {
  switch (fn) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Arctan: return "arctan";
    case Fn::TanxOverX: return "tanx_over_x";
  }
  return "?";
}

Interval sin_enclosure(const Interval& x, int max_terms) {
  if (x.is_point() && x.lo() == 0.0) return Interval(0.0);
  const Reduced red = reduce(x);
  switch (red.quadrant) {
    case 0: return sin_series(red.r, max_terms);
    case 1: return cos_series(red.r, max_terms);
    case 2: return -sin_series(red.r, max_terms);
    default: return -cos_series(red.r, max_terms);
  }
}

Interval cos_enclosure(const Interval& x, int max_terms) {
  const Reduced red = reduce(x);
  switch (red.quadrant) {
    case 0: return cos_series(red.r, max_terms);
    case 1: return -sin_series(red.r, max_terms);
    case 2: return -cos_series(red.r, max_terms);
    default: return sin_series(red.r, max_terms);
  }
}

Interval tan_enclosure(const Interval& x, int max_terms) {
  const Interval c = cos_enclosure(x, max_terms);
  if (c.contains_zero()) throw Error(ErrorKind::PoleProximity, "cos enclosure " + c.str() + " contains zero at " + x.str());
  const Interval quotient = sin_enclosure(x, max_terms) / c;
  const auto octant = tan_by_octant(x, max_terms);
  return octant ? refine(quotient, *octant) : quotient;
}

Interval tanx_over_x_enclosure(const Interval& x, int max_terms) {
  if (x.lo() <= 0.0) throw Error(ErrorKind::ContainsZero, "tan(x)/x needs x > 0, got " + x.str());
  if (x.hi() >= pi().half().lo()) throw Error(ErrorKind::PoleProximity, x.str() + " reaches pi/2");
  if (x.is_point() && x.lo() < kSmallArgument) {
    // tan(x)/x = 1 + x^2/3 (1 + delta) with 0 <= delta <= x^2 < 2^-52.
    const Interval third = sqr(x) / Interval(3.0);
    return Interval(1.0) + third * Interval(1.0, 1.0 + 0x1p-52);
  }
  Interval result = tan_enclosure(x, max_terms) / x;
  result = refine(result, Interval(1.0) + sqr(x) * tanx_over_x_tail_enclosure(x, 1));
  const Interval q = pi().power(2) - Interval(4.0) * sqr(x);
  if (q.is_positive()) result = refine(result, scaled_tanx_over_x_enclosure(x) / q);
  return result;
}

Interval arctan_enclosure(const Interval& x, int max_terms) {
  if (x.is_point() && x.lo() == 0.0) return Interval(0.0);
  std::optional<Interval> result;
  if (x.lo() < 0.0) merge(result, -atan_nonnegative(Interval(-std::fmin(x.hi(), 0.0), -x.lo()), max_terms, true));
  if (x.hi() >= 0.0) merge(result, atan_nonnegative(Interval(std::fmax(x.lo(), 0.0), x.hi()), max_terms, true));
  return *result;
}

Interval enclosure(Fn fn, const FnEnclosureRequest& request) {
  switch (fn) {
    case Fn::Sin: return sin_enclosure(request.x, request.max_terms);
    case Fn::Cos: return cos_enclosure(request.x, request.max_terms);
    case Fn::Tan: return tan_enclosure(request.x, request.max_terms);
    case Fn::Arctan: return arctan_enclosure(request.x, request.max_terms);
    case Fn::TanxOverX: return tanx_over_x_enclosure(request.x, request.max_terms);
  }
  return request.x;
}

std::vector<Rational> tanx_over_x_coefficients(int count) {
  // sin(x)/x = (tan(x)/x) cos(x), matched coefficient by coefficient in x^2.
  std::vector<Rational> t;
  Rational fact_odd(1);   // (2k+1)!
  std::vector<Rational> cos_c{Rational(1)};
  Rational fact_even(1);  // (2k)!
  for (int k = 0; k < count; ++k) {
    if (k > 0) {
      fact_odd *= Rational((2 * k) * (2 * k + 1));
      fact_even *= Rational((2 * k - 1) * (2 * k));
      cos_c.push_back(Rational(k % 2 == 0 ? 1 : -1) / fact_even);
    }
    Rational value = Rational(k % 2 == 0 ? 1 : -1) / fact_odd;
    for (int j = 0; j < k; ++j) value -= t[static_cast<std::size_t>(j)] * cos_c[static_cast<std::size_t>(k - j)];
    t.push_back(value);
  }
  return t;
}

Interval tanx_over_x_tail_enclosure(const Interval& x, int order) {
  if (order < 0 || order > kMaxTailOrder) throw std::invalid_argument("tail order out of range");
  if (x.mag() > 2.0) throw Error(ErrorKind::ReductionFailure, "tail series needs |x| <= 2, got " + x.str());
  const TailTable& table = tail_tables()[static_cast<std::size_t>(order)];
  const Interval z = sqr(x);

  Interval sum = table.coeffs.back();
  for (auto it = table.coeffs.rbegin() + 1; it != table.coeffs.rend(); ++it) sum = sum * z + *it;

  // |e_n| <= C/(2m+1)! with m = n - order; geometric bound on the rest.
  const int m0 = kTailTerms;
  Rational fact = factorial(2 * m0 + 1);
  const Interval zmag(z.mag());
  const Interval ratio = zmag / Interval((2.0 * m0 + 2.0) * (2.0 * m0 + 3.0));
  const Interval rest = table.constant * pow(zmag, static_cast<unsigned>(m0)) / enclose(fact) / (Interval(1.0) - ratio);
  sum = sum + symmetric(rest.hi());

  const Interval c = cos_enclosure(x);
  if (c.contains_zero()) throw Error(ErrorKind::PoleProximity, "cos enclosure contains zero at " + x.str());
  return sum / c;
}

Interval scaled_tanx_over_x_enclosure(const Interval& x) {
  if (x.lo() <= 0.0) throw Error(ErrorKind::ContainsZero, "scaled tan(x)/x needs x > 0, got " + x.str());
  const Interval y = pi().half() - x;
  if (y.mag() > 2.0) throw Error(ErrorKind::ReductionFailure, "pi/2 - x outside [-2, 2] for " + x.str());
  const Interval factor = Interval(2.0) * (pi().value() + Interval(2.0) * x);
  return factor * cos_series(y, kMaxSeriesTerms) / (x * sinc_series(y, kMaxSeriesTerms));
}

Interval arctan_ratio_residual(const PiPoly& p, const PiPoly& q, const Interval& x) {
  const Interval num = lift(p).eval(x);
  const Interval den = lift(q).eval(x);
  if (den.contains_zero()) throw Error(ErrorKind::PoleProximity, "denominator contains zero at " + x.str());
  const Interval z = num / den;
  Interval result = arctan_enclosure(z) - x;
  if (z.mag() <= kSplit) {
    const PiPoly shifted = p - PiPoly::x() * q;
    const Interval split = lift(shifted).eval(x) / den + atan_series(z, 1, kMaxSeriesTerms);
    result = refine(result, split);
  }
  return result;
}

}  // namespace tanbound::functions
