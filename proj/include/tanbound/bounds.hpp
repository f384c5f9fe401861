#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tanbound/core/interval.hpp"
#include "tanbound/core/pi_laurent.hpp"
#include "tanbound/core/poly.hpp"

namespace tanbound::bounds {

enum class BoundKind { BsLower, BsUpper, Thm1Lower, Thm1Upper, Thm2Upper };
enum class Side { Lower, Upper };

inline constexpr std::array<BoundKind, 5> kAllKinds = {BoundKind::BsLower, BoundKind::BsUpper, BoundKind::Thm1Lower,
                                                       BoundKind::Thm1Upper, BoundKind::Thm2Upper};

std::string_view to_string(BoundKind kind);
std::string_view to_string(Side side);
std::optional<BoundKind> parse_bound_kind(std::string_view text);
Side side_of(BoundKind kind);

/// Open interval (lo, hi) on which a bound is claimed. Endpoints are exact:
/// decimal thresholds are rationals, pi/2 is a PiLaurent monomial.
struct Validity {
  PiLaurent lo;
  PiLaurent hi;

  /// Exact for rational endpoints; for pi/2 the point must clear the
  /// certified enclosure.
  bool contains(const Rational& x) const;
  bool contains(const Interval& x) const;
  std::string str() const;
};

const Validity& validity(BoundKind kind);

/// The bound on tan(x) is numerator/denominator; the bound on tan(x)/x drops
/// the leading factor x of the numerator.
struct BoundFormula {
  PiPoly numerator;
  PiPoly denominator;

  PiPoly tan_over_x_numerator() const;
};

const BoundFormula& formula(BoundKind kind);

/// Coefficients of (pi/2 - x)^k in a(x) and b(x): 8/pi, 16/pi^2 - 8/3,
/// 32/pi^3 - 8/(3 pi), for k = 1, 2, 3.
const PiLaurent& shift_coefficient(int k);
/// a(x) and b(x) expanded in powers of x.
const PiPoly& a_poly();
const PiPoly& b_poly();
/// sum_k coefficients[k-1] (pi/2 - x)^k, expanded exactly.
PiPoly shifted_form(std::span<const PiLaurent> coefficients);
/// Numerator of the near-zero bound: pi^2 + (pi^2/3 - 4) x^2 + (2 pi^2/15 - 4/3) x^4.
const PiPoly& thm2_numerator();

/// Certified value of the bound on tan(x)/x. Throws Error(OutsideValidity)
/// unless x lies strictly inside the validity interval, and
/// Error(PoleProximity) when the denominator enclosure drops below 1e-300.
Interval eval_bound(BoundKind kind, const Interval& x);

/// Encloses N(x) - (pi^2 - 4x^2) tan(x)/x where N/(pi^2 - 4x^2) is the bound.
/// Its sign is the sign of bound - tan(x)/x; it is computed in two
/// cancellation-free forms (one accurate near 0, one near pi/2) and intersected.
Interval margin(BoundKind kind, const Interval& x);

struct Witness {
  BoundKind kind;
  Side side;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Witness> witnesses;
};

/// Points closer than this to pi/2 are refused by best_enclosure.
inline constexpr double kPoleGuard = 1e-7;

/// Intersection of every bound valid at x: lo from the best lower bound, hi
/// from the best upper bound; ties keep every witness.
Enclosure best_enclosure(const Interval& x);

enum class Verdict { Holds, Violated, Inconclusive };
std::string_view to_string(Verdict verdict);

struct Separation {
  BoundKind kind;
  Verdict verdict = Verdict::Inconclusive;
  Interval bound;
  Interval truth;
  /// bound - tan(x)/x, signed.
  Interval gap;
};

/// Certified strict comparison of a bound with tan(x)/x at x.
Separation check_separation(BoundKind kind, const Interval& x);

struct TightnessRow {
  Rational x;
  BoundKind kind;
  std::optional<Interval> bound;
  std::optional<Interval> truth;
  std::optional<Interval> gap;
  std::string error;
};

/// One row per (grid point, kind), grid-major. Evaluation errors land in the
/// row's error field instead of aborting the table.
std::vector<TightnessRow> tightness_profile(std::span<const Rational> grid, std::span<const BoundKind> kinds);

inline constexpr const char* kCsvHeader = "x,kind,bound_lo,bound_hi,true_lo,true_hi,gap_lo,gap_hi";

/// CSV with kCsvHeader; an extra trailing error column is added only when
/// some row carries an error.
std::string to_csv(std::span<const TightnessRow> rows);
nlohmann::json to_json(std::span<const TightnessRow> rows);

nlohmann::json to_json(const Enclosure& enclosure);
Enclosure enclosure_from_json(const nlohmann::json& j);

}  // namespace tanbound::bounds
