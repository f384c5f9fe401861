#pragma once

#include <optional>
#include <string_view>

#include "tanbound/certificate.hpp"
#include "tanbound/core/pi_laurent.hpp"
#include "tanbound/core/poly.hpp"

namespace tanbound::prover {

/// Squares of the bound numerators reach pi^-6 and the factor 9 pi^4 pushes
/// the other side to pi^8, so the prover works in a wider window than the
/// default.
inline constexpr PowerWindow kProverWindow{-12, 12};

enum class CaseName { F, G, H };
std::string_view to_string(CaseName name);
std::optional<CaseName> parse_case_name(std::string_view text);

/// arctan(p/q) - x on (lo, hi); hi unset means pi/2.
struct RationalFunctionCase {
  CaseName name;
  PiPoly p;
  PiPoly q;
  Rational lo;
  std::optional<Rational> hi;
};

const RationalFunctionCase& named_case(CaseName name);

/// The polynomials whose sign settles each case: u, v in x and w in t = x^2.
const PiPoly& poly_u();
const PiPoly& poly_v();
const PiPoly& poly_w();
const PiPoly& claimed_polynomial(CaseName name);

/// p'q - pq' - p^2 - q^2, the numerator of (arctan(p/q) - x)'.
PiPoly derivative_numerator(const PiPoly& p, const PiPoly& q);

/// The factored right-hand side built from a claimed u, v or w:
/// (pi-2x)^3 u/(9 pi^4), -(pi-2x)^4 v/(9 pi^6), -x^6 w(x^2)/225.
PiPoly factored_form(CaseName name, const PiPoly& claimed);

struct Factorization {
  bool exact_match = false;
  PiPoly residual;
};

Factorization verify_factorization(const RationalFunctionCase& c);
Factorization verify_factorization(const RationalFunctionCase& c, const PiPoly& claimed);

/// Largest double below pi/2, as an exact rational.
Rational pi_half_lower();

struct CascadeOptions {
  /// Derivative order at which monotonicity is established by inspection.
  /// Unset: the lowest qualifying order, retrying higher ones if the ascent
  /// back to order 0 fails.
  std::optional<int> pivot_order;
};

CascadeCertificate cascade_prove(const PiPoly& p, const Rational& lo, const Rational& hi, Direction direction,
                                 CascadeOptions options = {});

inline constexpr int kMaxDepth = 40;
inline constexpr std::size_t kMaxCells = 100000;

SubdivisionCertificate subdivision_prove(const PiPoly& p, const Rational& lo, const Rational& hi, Direction direction,
                                         int max_depth = kMaxDepth);

/// Certified enclosure of p over [lo, hi]: interval Horner intersected with
/// the mean-value form about the midpoint.
Interval cell_enclosure(const PiPoly& p, const PiPoly& dp, const Rational& lo, const Rational& hi);

/// Certified value of p at an exact rational point.
Interval point_enclosure(const PiPoly& p, const Rational& x);

/// Vertex -c1/(2 c2) of a quadratic; Error(DivisorContainsZero) if c2 is not
/// certifiably nonzero.
Interval vertex_enclosure(const PiPoly& quadratic);

/// The three certificates: u and v positive up to pi/2 (pivot order 2),
/// w negative on (0, 1.881) (pivot order 0).
struct CaseProof {
  CaseName name;
  CascadeCertificate cascade;
  SubdivisionCertificate subdivision;
};
CaseProof prove_case(CaseName name);

/// (1371/1000)^2 < 1881/1000, so w(x^2) < 0 on (0, 1371/1000) follows from w < 0 on (0, 1881/1000).
bool thm2_interval_covered();

}  // namespace tanbound::prover
