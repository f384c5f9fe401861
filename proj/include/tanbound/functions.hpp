#pragma once

#include <string_view>
#include <vector>

#include "tanbound/core/interval.hpp"
#include "tanbound/core/poly.hpp"
#include "tanbound/core/rational.hpp"

namespace tanbound::functions {

/// Hard cap on the number of series terms summed by any enclosure.
inline constexpr int kMaxSeriesTerms = 40;
/// Series stop at the first term whose magnitude falls below this bound;
/// that term then bounds the remainder.
inline constexpr double kSeriesCutoff = 0x1p-60;
/// Point inputs of tan(x)/x below this use the 1 + x^2/3 guard.
inline constexpr double kSmallArgument = 0x1p-26;

enum class Fn { Sin, Cos, Tan, Arctan, TanxOverX };

std::string_view to_string(Fn fn);

struct FnEnclosureRequest {
  Interval x;
  int max_terms = kMaxSeriesTerms;
};

/// Contains sin(t) for every t in x. Throws Error(ReductionFailure) when x is
/// too wide (width >= 1) or reduces outside [-2, 2].
Interval sin_enclosure(const Interval& x, int max_terms = kMaxSeriesTerms);
Interval cos_enclosure(const Interval& x, int max_terms = kMaxSeriesTerms);
/// sin/cos; Error(PoleProximity) when the cosine enclosure contains zero.
Interval tan_enclosure(const Interval& x, int max_terms = kMaxSeriesTerms);
/// tan(x)/x on (0, pi/2). Error(ContainsZero) unless x > 0, Error(PoleProximity)
/// when x reaches pi/2.
Interval tanx_over_x_enclosure(const Interval& x, int max_terms = kMaxSeriesTerms);
/// Total function; reduced to |u| <= 0.4143 before the alternating series.
Interval arctan_enclosure(const Interval& x, int max_terms = kMaxSeriesTerms);

Interval enclosure(Fn fn, const FnEnclosureRequest& request);

/// Exact Maclaurin coefficients t_k of tan(x)/x = sum_k t_k x^(2k), k < count.
std::vector<Rational> tanx_over_x_coefficients(int count);

/// Encloses (tan(x)/x - sum_{k<order} t_k x^(2k)) / x^(2 order), which stays
/// bounded at 0. Used to compare quantities that agree to high order at 0
/// without cancellation. Requires 0 <= order <= 4 and |x| < pi/2.
Interval tanx_over_x_tail_enclosure(const Interval& x, int order);

/// (pi^2 - 4x^2) tan(x)/x, evaluated as 2(pi+2x) cos(y) / (x sinc(y)) with
/// y = pi/2 - x, so it stays accurate as x approaches pi/2.
Interval scaled_tanx_over_x_enclosure(const Interval& x);

/// arctan(p(x)/q(x)) - x. Small quotients are split as
/// (p - x q)/q + (arctan z - z) so that the leading terms cancel exactly.
Interval arctan_ratio_residual(const PiPoly& p, const PiPoly& q, const Interval& x);

}  // namespace tanbound::functions
