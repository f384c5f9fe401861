#include "tanbound/prover.hpp"

#include <algorithm>
#include <stdexcept>

#include "tanbound/bounds.hpp"
#include "tanbound/core/error.hpp"

namespace tanbound::prover {

namespace {

PiLaurent pw(const Rational& c, int k) { return PiLaurent::monomial(c, k, kProverWindow); }

PiLaurent rat(long n, long d = 1) { return PiLaurent(Rational(mpz_class(n), mpz_class(d))).widened(kProverWindow); }

PiPoly wide(const PiPoly& p) { return widened(p, kProverWindow); }

PiPoly x_poly() { return PiPoly{rat(0), rat(1)}; }

// pi - 2x
PiPoly pi_minus_2x() { return PiPoly{pw(1, 1), rat(-2)}; }

int sign_of(const Interval& v) { return v.is_positive() ? 1 : (v.is_negative() ? -1 : 0); }

}  // namespace

std::string_view to_string(CaseName name) {
  switch (name) {
    case CaseName::F: return "f";
    case CaseName::G: return "g";
    case CaseName::H: return "h";
  }
  return "?";
}

std::optional<CaseName> parse_case_name(std::string_view text) {
  for (CaseName c : {CaseName::F, CaseName::G, CaseName::H})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

const PiPoly& poly_u() {
  static const PiPoly u{pw(144, 3) + pw(-15, 5), pw(432, 2) + pw(-42, 4), pw(96, 3) + pw(-432, 1) + pw(-4, 5),
                        pw(8, 4) + pw(-96, 2) + rat(288)};
  return u;
}

const PiPoly& poly_v() {
  static const PiPoly v{pw(18, 6) + pw(-180, 4), pw(60, 5) + pw(-576, 3), pw(864, 2) + pw(-168, 4) + pw(9, 6),
                        pw(240, 3) + pw(-1152, 1) + pw(-12, 5), pw(4, 4) + pw(-96, 2) + rat(576)};
  return v;
}

const PiPoly& poly_w() {
  static const PiPoly w{pw(85, 4) + pw(-840, 2), pw(20, 4) + pw(-440, 2) + rat(2400),
                        pw(4, 4) + pw(-80, 2) + rat(400)};
  return w;
}

const PiPoly& claimed_polynomial(CaseName name) {
  switch (name) {
    case CaseName::F: return poly_u();
    case CaseName::G: return poly_v();
    case CaseName::H: return poly_w();
  }
  throw std::logic_error("unknown case");
}

const RationalFunctionCase& named_case(CaseName name) {
  static const auto make = [](CaseName n, bounds::BoundKind kind, const Rational& lo, std::optional<Rational> hi) {
    const auto& f = bounds::formula(kind);
    return RationalFunctionCase{n, wide(f.numerator), wide(f.denominator), lo, std::move(hi)};
  };
  static const RationalFunctionCase f = make(CaseName::F, bounds::BoundKind::Thm1Lower, Rational::parse("0.373"), {});
  static const RationalFunctionCase g = make(CaseName::G, bounds::BoundKind::Thm1Upper, Rational::parse("0.301"), {});
  static const RationalFunctionCase h =
      make(CaseName::H, bounds::BoundKind::Thm2Upper, Rational(0), Rational::parse("1.371"));
  switch (name) {
    case CaseName::F: return f;
    case CaseName::G: return g;
    case CaseName::H: return h;
  }
  throw std::logic_error("unknown case");
}

PiPoly derivative_numerator(const PiPoly& p_in, const PiPoly& q_in) {
  const PiPoly p = wide(p_in);
  const PiPoly q = wide(q_in);
  return p.derivative() * q - p * q.derivative() - p * p - q * q;
}

PiPoly factored_form(CaseName name, const PiPoly& claimed_in) {
  const PiPoly claimed = wide(claimed_in);
  switch (name) {
    case CaseName::F: return pw(Rational(mpz_class(1), mpz_class(9)), -4) * (pi_minus_2x().pow(3) * claimed);
    case CaseName::G: return pw(Rational(mpz_class(-1), mpz_class(9)), -6) * (pi_minus_2x().pow(4) * claimed);
    case CaseName::H: {
      const PiPoly x2 = x_poly() * x_poly();
      return rat(-1, 225) * (x_poly().pow(6) * claimed.compose(x2));
    }
  }
  throw std::logic_error("unknown case");
}

Factorization verify_factorization(const RationalFunctionCase& c) {
  return verify_factorization(c, claimed_polynomial(c.name));
}

Factorization verify_factorization(const RationalFunctionCase& c, const PiPoly& claimed) {
  Factorization f;
  f.residual = derivative_numerator(c.p, c.q) - factored_form(c.name, claimed);
  f.exact_match = f.residual.is_zero();
  return f;
}

Rational pi_half_lower() { return Rational::from_double(PiEnclosure::standard().half().lo()); }

Interval point_enclosure(const PiPoly& p, const Rational& x) { return pilaurent_eval(eval_exact(p, x)); }

Interval vertex_enclosure(const PiPoly& quadratic) {
  const Interval c1 = pilaurent_eval(quadratic.coeff(1));
  const Interval c2 = pilaurent_eval(quadratic.coeff(2));
  return -(c1 / (Interval(2.0) * c2));
}

Interval cell_enclosure(const PiPoly& p, const PiPoly& dp, const Rational& lo, const Rational& hi) {
  const Interval x = Interval::hull(enclose(lo), enclose(hi));
  const Interval naive = horner_enclosure(lift(p), x);
  const Rational mid = (lo + hi) / Rational(2);
  const Interval m = enclose(mid);
  const Interval mean_value = point_enclosure(p, mid) + horner_enclosure(lift(dp), x) * (x - m);
  return refine(naive, mean_value);
}

namespace {

struct Level {
  int sign = 0;           // certified sign of p^(k) on the interval, 0 if unknown
  bool right_free = true;  // no evaluation at hi so far
  bool left_free = true;
};

// Attempts the cascade with a fixed pivot order; returns nullopt if the pivot
// does not qualify as monotone by inspection.
std::optional<CascadeCertificate> try_pivot(const PiPoly& p, const Rational& lo, const Rational& hi,
                                            Direction direction, int pivot) {
  CascadeCertificate cert;
  cert.polynomial = p;
  cert.lo = lo;
  cert.hi = hi;
  cert.direction = direction;

  const PiPoly d = p.derivative(pivot);
  const int deg = d.degree();
  if (deg > 2 || deg < 0) return std::nullopt;
  const Interval lead = pilaurent_eval(d.leading());
  if (lead.contains_zero()) {
    cert.note = "leading coefficient of the pivot derivative is not sign-definite";
    return cert;
  }

  // slope: +1 increasing, -1 decreasing, 0 constant on the interval
  int slope = 0;
  bool right_free = true;
  bool left_free = true;
  if (deg == 1) {
    slope = sign_of(lead);
    cert.steps.push_back({pivot, slope > 0 ? Claim::Increasing : Claim::Decreasing, lo, lead});
  } else if (deg == 2) {
    Interval vertex;
    try {
      vertex = vertex_enclosure(d);
    } catch (const Error&) {
      return std::nullopt;
    }
    const bool opens_up = lead.is_positive();
    const Claim claim = opens_up ? Claim::MinLocationOutside : Claim::MaxLocationOutside;
    if (certainly_below(vertex, lo)) {
      slope = opens_up ? 1 : -1;
      cert.steps.push_back({pivot, claim, lo, vertex});
      right_free = true;
      left_free = false;
    } else if (certainly_above(vertex, hi)) {
      slope = opens_up ? -1 : 1;
      cert.steps.push_back({pivot, claim, hi, vertex});
      right_free = false;
    } else {
      return std::nullopt;
    }
  }

  // Sign of each derivative, from the pivot down to order 0.
  const int want = direction == Direction::Positive ? 1 : -1;
  for (int k = pivot; k >= 0; --k) {
    const PiPoly dk = p.derivative(k);
    if (slope == 0) {
      // constant polynomial
      const Interval v = pilaurent_eval(dk.coeff(0));
      const int s = sign_of(v);
      if (s == 0) {
        cert.note = "constant derivative of order " + std::to_string(k) + " is not sign-definite";
        return cert;
      }
      cert.steps.push_back({k, s > 0 ? Claim::PositiveAtEndpoint : Claim::NegativeAtEndpoint, lo, v});
      slope = s;
      continue;
    }
    // Monotone: positive iff the smaller end value is positive, negative iff
    // the larger end value is negative. Try the target sign first.
    const Rational& small_end = slope > 0 ? lo : hi;
    const Rational& large_end = slope > 0 ? hi : lo;
    const int first = want;
    bool settled = false;
    for (int attempt : {first, -first}) {
      const Rational& at = attempt > 0 ? small_end : large_end;
      const Interval v = point_enclosure(dk, at);
      if (sign_of(v) == attempt) {
        cert.steps.push_back({k, attempt > 0 ? Claim::PositiveAtEndpoint : Claim::NegativeAtEndpoint, at, v});
        if (at == hi) right_free = false;
        if (at == lo) left_free = false;
        slope = attempt;
        settled = true;
        break;
      }
      if (k == 0) break;
    }
    if (!settled) {
      cert.note = "order " + std::to_string(k) + " changes sign or is unresolved at the endpoints";
      return cert;
    }
  }

  const int final_sign = slope;
  if (final_sign == want) {
    cert.conclusion = direction == Direction::Positive ? Conclusion::Positive : Conclusion::Negative;
    cert.extends_right = right_free;
    cert.extends_left = left_free;
  } else {
    cert.note = "order 0 has the opposite sign";
  }
  return cert;
}

}  // namespace

CascadeCertificate cascade_prove(const PiPoly& p, const Rational& lo, const Rational& hi, Direction direction,
                                 CascadeOptions options) {
  if (!(lo < hi)) throw std::invalid_argument("cascade interval must have lo < hi");
  if (options.pivot_order) {
    if (*options.pivot_order < 0) throw std::invalid_argument("pivot order must be non-negative");
    auto cert = try_pivot(p, lo, hi, direction, *options.pivot_order);
    if (cert) return *cert;
    CascadeCertificate c{p, "x", lo, hi, direction, {}, Conclusion::Inconclusive, false, false, {}};
    c.note = "derivative of order " + std::to_string(*options.pivot_order) + " is not monotone by inspection";
    return c;
  }
  std::optional<CascadeCertificate> last;
  for (int pivot = 0; pivot <= std::max(p.degree(), 0); ++pivot) {
    auto cert = try_pivot(p, lo, hi, direction, pivot);
    if (!cert) continue;
    if (cert->conclusion != Conclusion::Inconclusive) return *cert;
    if (!last) last = std::move(cert);
  }
  if (last) return *last;
  CascadeCertificate c{p, "x", lo, hi, direction, {}, Conclusion::Inconclusive, false, false, {}};
  c.note = "no derivative order is monotone by inspection";
  return c;
}

SubdivisionCertificate subdivision_prove(const PiPoly& p, const Rational& lo, const Rational& hi, Direction direction,
                                         int max_depth) {
  if (!(lo < hi)) throw std::invalid_argument("subdivision interval must have lo < hi");
  if (max_depth < 0 || max_depth > kMaxDepth) throw std::invalid_argument("max_depth must lie in [0, 40]");
  SubdivisionCertificate cert;
  cert.polynomial = p;
  cert.lo = lo;
  cert.hi = hi;
  cert.direction = direction;
  cert.max_depth = max_depth;
  const int want = direction == Direction::Positive ? 1 : -1;
  const PiPoly dp = p.derivative();

  struct Pending {
    Rational lo, hi;
    int depth;
  };
  std::vector<Pending> stack{{lo, hi, 0}};
  while (!stack.empty()) {
    Pending c = std::move(stack.back());
    stack.pop_back();
    const Interval v = cell_enclosure(p, dp, c.lo, c.hi);
    const int s = sign_of(v);
    if (s == want) {
      cert.cells.push_back({c.lo, c.hi, v});
      continue;
    }
    if (s == -want) {
      cert.offending_cell = Cell{c.lo, c.hi, v};
      cert.note = "opposite sign certified on a cell";
      return cert;
    }
    if (c.depth >= max_depth || cert.cells.size() + stack.size() >= kMaxCells) {
      cert.offending_cell = Cell{c.lo, c.hi, v};
      cert.note = "depth exceeded without a sign-definite enclosure";
      return cert;
    }
    const Rational mid = (c.lo + c.hi) / Rational(2);
    stack.push_back({mid, c.hi, c.depth + 1});
    stack.push_back({c.lo, mid, c.depth + 1});
  }
  cert.conclusion = direction == Direction::Positive ? Conclusion::Positive : Conclusion::Negative;
  return cert;
}

CaseProof prove_case(CaseName name) {
  CaseProof proof{name, {}, {}};
  switch (name) {
    case CaseName::F:
      proof.cascade = cascade_prove(poly_u(), Rational::parse("0.373"), pi_half_lower(), Direction::Positive, {2});
      proof.subdivision = subdivision_prove(poly_u(), Rational::parse("0.373"), pi_half_lower(), Direction::Positive);
      break;
    case CaseName::G:
      proof.cascade = cascade_prove(poly_v(), Rational::parse("0.301"), pi_half_lower(), Direction::Positive, {2});
      proof.subdivision = subdivision_prove(poly_v(), Rational::parse("0.301"), pi_half_lower(), Direction::Positive);
      break;
    case CaseName::H:
      proof.cascade = cascade_prove(poly_w(), Rational(0), Rational::parse("1.881"), Direction::Negative, {0});
      proof.subdivision = subdivision_prove(poly_w(), Rational(0), Rational::parse("1.881"), Direction::Negative);
      proof.cascade.variable = "t";
      proof.subdivision.variable = "t";
      break;
  }
  return proof;
}

bool thm2_interval_covered() {
  const Rational r = Rational::parse("1.371");
  return r * r < Rational::parse("1.881");
}

}  // namespace tanbound::prover
