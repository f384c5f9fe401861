#include "tanbound/certificate.hpp"

#include <algorithm>

#include "tanbound/core/error.hpp"
#include "tanbound/prover.hpp"

namespace tanbound::prover {

using nlohmann::json;

std::string_view to_string(Direction d) { return d == Direction::Positive ? "positive" : "negative"; }

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Positive: return "POSITIVE";
    case Conclusion::Negative: return "NEGATIVE";
    case Conclusion::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string_view to_string(Claim c) {
  switch (c) {
    case Claim::Increasing: return "increasing";
    case Claim::Decreasing: return "decreasing";
    case Claim::MinLocationOutside: return "min-location-outside";
    case Claim::MaxLocationOutside: return "max-location-outside";
    case Claim::PositiveAtEndpoint: return "positive-at-endpoint";
    case Claim::NegativeAtEndpoint: return "negative-at-endpoint";
  }
  return "?";
}

std::string_view to_string(Fault f) {
  switch (f) {
    case Fault::FlipSign: return "flipped-sign";
    case Fault::SkipDerivativeOrder: return "skipped-derivative-order";
    case Fault::ShrinkInterval: return "shrunk-interval";
  }
  return "?";
}

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, "certificate: " + what); }

template <class E, std::size_t N>
E enum_from(const std::string& text, const E (&values)[N], const char* what) {
  for (E v : values)
    if (to_string(v) == text) return v;
  parse_error(std::string("unknown ") + what + " '" + text + "'");
}

json interval_json(const Interval& v) { return {{"lo", format_double(v.lo())}, {"hi", format_double(v.hi())}}; }

Interval interval_from(const json& j) {
  return Interval(parse_double(j.at("lo").get<std::string>()), parse_double(j.at("hi").get<std::string>()));
}

Rational rational_from(const json& j) { return Rational::parse(j.get<std::string>()); }

json range_json(const Rational& lo, const Rational& hi) { return json::array({lo.str(), hi.str()}); }

int sign_of(const Interval& v) { return v.is_positive() ? 1 : (v.is_negative() ? -1 : 0); }

bool agrees(const Interval& recorded, const Interval& fresh) {
  return intersect(recorded, fresh).has_value() && sign_of(recorded) == sign_of(fresh);
}

std::string check_cascade(const CascadeCertificate& c) {
  if (!(c.lo < c.hi)) return "interval is empty";
  const bool definite = c.conclusion != Conclusion::Inconclusive;
  if (c.conclusion == Conclusion::Positive && c.direction != Direction::Positive)
    return "conclusion does not match direction";
  if (c.conclusion == Conclusion::Negative && c.direction != Direction::Negative)
    return "conclusion does not match direction";
  if (c.steps.empty()) return definite ? "definite conclusion without steps" : "";

  const int pivot = c.steps.front().derivative_order;
  if (pivot < 0) return "negative derivative order";
  const PiPoly d = c.polynomial.derivative(pivot);
  const int deg = d.degree();
  if (deg < 0 || deg > 2) return "pivot derivative is not monotone by inspection";
  const Interval lead = pilaurent_eval(d.leading());
  if (lead.contains_zero()) return "pivot leading coefficient is not sign-definite";

  std::size_t i = 0;
  int slope = 0;
  bool right_free = true;
  bool left_free = true;
  const CascadeStep& first = c.steps.front();
  if (deg == 1) {
    const Claim want = lead.is_positive() ? Claim::Increasing : Claim::Decreasing;
    if (first.claim != want) return "pivot monotonicity claim does not match the leading coefficient";
    if (!agrees(first.value_enclosure, lead)) return "pivot slope enclosure does not reproduce";
    slope = sign_of(lead);
    i = 1;
  } else if (deg == 2) {
    const bool up = lead.is_positive();
    if (first.claim != (up ? Claim::MinLocationOutside : Claim::MaxLocationOutside))
      return "pivot vertex claim does not match the leading coefficient";
    const Interval vertex = vertex_enclosure(d);
    if (!intersect(first.value_enclosure, vertex)) return "vertex enclosure does not reproduce";
    if (first.evaluation_point == c.lo && certainly_below(vertex, c.lo)) {
      slope = up ? 1 : -1;
      left_free = false;
    } else if (first.evaluation_point == c.hi && certainly_above(vertex, c.hi)) {
      slope = up ? -1 : 1;
      right_free = false;
    } else {
      return "vertex is not certified outside the interval";
    }
    i = 1;
  }

  int expected = pivot;
  for (; i < c.steps.size(); ++i) {
    const CascadeStep& s = c.steps[i];
    if (s.derivative_order != expected) return "gap in derivative orders at step " + std::to_string(i);
    if (s.claim != Claim::PositiveAtEndpoint && s.claim != Claim::NegativeAtEndpoint)
      return "step " + std::to_string(i) + " is not an endpoint claim";
    const int claimed = s.claim == Claim::PositiveAtEndpoint ? 1 : -1;
    const PiPoly dk = c.polynomial.derivative(expected);
    Interval fresh;
    if (slope == 0) {
      if (s.evaluation_point < c.lo || s.evaluation_point > c.hi) return "evaluation point outside the interval";
      fresh = pilaurent_eval(dk.coeff(0));
    } else {
      const Rational& need = (claimed > 0) == (slope > 0) ? c.lo : c.hi;
      if (!(s.evaluation_point == need)) return "step " + std::to_string(i) + " is not evaluated at the deciding endpoint";
      fresh = point_enclosure(dk, s.evaluation_point);
      if (need == c.hi) right_free = false;
      if (need == c.lo) left_free = false;
    }
    if (sign_of(fresh) != claimed) return "step " + std::to_string(i) + " sign does not reproduce";
    if (!agrees(s.value_enclosure, fresh)) return "step " + std::to_string(i) + " enclosure does not reproduce";
    slope = claimed;
    --expected;
  }
  if (expected < -1) return "steps continue past order 0";
  if (definite) {
    if (expected != -1) return "cascade stops before order 0";
    const int want = c.conclusion == Conclusion::Positive ? 1 : -1;
    if (slope != want) return "order 0 sign does not match the conclusion";
    if (c.extends_right && !right_free) return "extends_right claimed but hi was used";
    if (c.extends_left && !left_free) return "extends_left claimed but lo was used";
  }
  return "";
}

bool is_power_of_two_fraction(const Rational& whole, const Rational& part, int max_depth) {
  Rational r = whole / part;
  if (!r.is_integer()) return false;
  for (int k = 0; k <= max_depth; ++k) {
    if (r == Rational(1)) return true;
    r = r / Rational(2);
    if (!r.is_integer()) return false;
  }
  return false;
}

std::string check_subdivision(const SubdivisionCertificate& c) {
  if (!(c.lo < c.hi)) return "interval is empty";
  if (c.max_depth < 0 || c.max_depth > kMaxDepth) return "max_depth out of range";
  const bool definite = c.conclusion != Conclusion::Inconclusive;
  if (c.conclusion == Conclusion::Positive && c.direction != Direction::Positive)
    return "conclusion does not match direction";
  if (c.conclusion == Conclusion::Negative && c.direction != Direction::Negative)
    return "conclusion does not match direction";
  const int want = c.direction == Direction::Positive ? 1 : -1;
  const PiPoly dp = c.polynomial.derivative();
  const Rational width = c.hi - c.lo;
  Rational cursor = c.lo;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    const Cell& cell = c.cells[i];
    if (!(cell.lo < cell.hi)) return "cell " + std::to_string(i) + " is empty";
    // Depth-first bisection emits cells left to right, but an inconclusive
    // run stops early, so only contiguity from lo is required.
    if (!(cell.lo == cursor)) return "cells do not partition the interval at cell " + std::to_string(i);
    if (!is_power_of_two_fraction(width, cell.hi - cell.lo, c.max_depth))
      return "cell " + std::to_string(i) + " is not a bisection cell within max_depth";
    const Interval fresh = cell_enclosure(c.polynomial, dp, cell.lo, cell.hi);
    if (sign_of(fresh) != want) return "cell " + std::to_string(i) + " sign does not reproduce";
    if (!agrees(cell.value_enclosure, fresh)) return "cell " + std::to_string(i) + " enclosure does not reproduce";
    cursor = cell.hi;
  }
  if (definite && !(cursor == c.hi)) return "cells do not cover the interval";
  if (definite && c.offending_cell) return "definite conclusion with an offending cell";
  return "";
}

}  // namespace

json to_json(const PiPoly& p) {
  json coeffs = json::object();
  for (int k = 0; k <= p.degree(); ++k) {
    const PiLaurent& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    json powers = json::object();
    for (const auto& [power, value] : c.coeffs()) powers[std::to_string(power)] = value.str();
    coeffs[std::to_string(k)] = std::move(powers);
  }
  return coeffs;
}

PiPoly poly_from_json(const json& j) {
  if (!j.is_object()) parse_error("polynomial must be an object");
  std::vector<PiLaurent> coeffs;
  for (const auto& [xk, powers] : j.items()) {
    const int k = std::stoi(xk);
    if (k < 0 || k > 64) parse_error("polynomial degree out of range");
    if (coeffs.size() <= static_cast<std::size_t>(k)) coeffs.resize(static_cast<std::size_t>(k) + 1, PiLaurent().widened(kProverWindow));
    PiLaurent c = PiLaurent().widened(kProverWindow);
    for (const auto& [pk, value] : powers.items()) {
      const int power = std::stoi(pk);
      const PowerWindow window{std::min(power, kProverWindow.lo), std::max(power, kProverWindow.hi)};
      c += PiLaurent::monomial(Rational::parse(value.get<std::string>()), power, window);
    }
    coeffs[static_cast<std::size_t>(k)] = c;
  }
  return PiPoly(std::move(coeffs));
}

json to_json(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        json j;
        j["version"] = kCertificateVersion;
        j["variable"] = c.variable;
        j["polynomial"] = to_json(c.polynomial);
        j["interval"] = range_json(c.lo, c.hi);
        j["direction"] = std::string(to_string(c.direction));
        j["conclusion"] = std::string(to_string(c.conclusion));
        if (!c.note.empty()) j["note"] = c.note;
        if constexpr (std::is_same_v<T, CascadeCertificate>) {
          j["method"] = "cascade";
          json steps = json::array();
          for (const auto& s : c.steps)
            steps.push_back({{"derivative_order", s.derivative_order},
                             {"claim", std::string(to_string(s.claim))},
                             {"evaluation_point", s.evaluation_point.str()},
                             {"value_enclosure", interval_json(s.value_enclosure)}});
          j["steps"] = std::move(steps);
          j["extends_right"] = c.extends_right;
          j["extends_left"] = c.extends_left;
        } else {
          j["method"] = "subdivision";
          j["max_depth"] = c.max_depth;
          json cells = json::array();
          for (const auto& cell : c.cells)
            cells.push_back({{"interval", range_json(cell.lo, cell.hi)}, {"value_enclosure", interval_json(cell.value_enclosure)}});
          j["cells"] = std::move(cells);
          if (c.offending_cell)
            j["offending_cell"] = {{"interval", range_json(c.offending_cell->lo, c.offending_cell->hi)},
                                   {"value_enclosure", interval_json(c.offending_cell->value_enclosure)}};
        }
        return j;
      },
      cert);
}

Certificate certificate_from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != kCertificateVersion) parse_error("unsupported version");
    static constexpr Direction kDirections[] = {Direction::Positive, Direction::Negative};
    static constexpr Conclusion kConclusions[] = {Conclusion::Positive, Conclusion::Negative, Conclusion::Inconclusive};
    static constexpr Claim kClaims[] = {Claim::Increasing,         Claim::Decreasing,         Claim::MinLocationOutside,
                                        Claim::MaxLocationOutside, Claim::PositiveAtEndpoint, Claim::NegativeAtEndpoint};
    const auto& range = j.at("interval");
    if (!range.is_array() || range.size() != 2) parse_error("interval must be a pair");
    const std::string method = j.at("method").get<std::string>();
    auto fill = [&](auto& c) {
      c.polynomial = poly_from_json(j.at("polynomial"));
      c.variable = j.value("variable", std::string("x"));
      c.lo = rational_from(range[0]);
      c.hi = rational_from(range[1]);
      c.direction = enum_from(j.at("direction").get<std::string>(), kDirections, "direction");
      c.conclusion = enum_from(j.at("conclusion").get<std::string>(), kConclusions, "conclusion");
      c.note = j.value("note", std::string());
    };
    if (method == "cascade") {
      CascadeCertificate c;
      fill(c);
      for (const auto& s : j.at("steps"))
        c.steps.push_back({s.at("derivative_order").get<int>(),
                           enum_from(s.at("claim").get<std::string>(), kClaims, "claim"),
                           rational_from(s.at("evaluation_point")), interval_from(s.at("value_enclosure"))});
      c.extends_right = j.value("extends_right", false);
      c.extends_left = j.value("extends_left", false);
      return c;
    }
    if (method == "subdivision") {
      SubdivisionCertificate c;
      fill(c);
      c.max_depth = j.at("max_depth").get<int>();
      auto cell_from = [](const json& cj) {
        const auto& r = cj.at("interval");
        if (!r.is_array() || r.size() != 2) parse_error("cell interval must be a pair");
        return Cell{rational_from(r[0]), rational_from(r[1]), interval_from(cj.at("value_enclosure"))};
      };
      for (const auto& cj : j.at("cells")) c.cells.push_back(cell_from(cj));
      if (j.contains("offending_cell")) c.offending_cell = cell_from(j.at("offending_cell"));
      return c;
    }
    parse_error("unknown method '" + method + "'");
  } catch (const json::exception& e) {
    parse_error(e.what());
  } catch (const std::invalid_argument& e) {
    parse_error(e.what());
  } catch (const std::out_of_range& e) {
    parse_error(e.what());
  }
}

std::string certificate_problem(const Certificate& cert) {
  try {
    return std::visit(
        [](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, CascadeCertificate>)
            return check_cascade(c);
          else
            return check_subdivision(c);
        },
        cert);
  } catch (const Error& e) {
    return std::string("evaluation failed: ") + e.what();
  }
}

bool check_certificate(const Certificate& cert) { return certificate_problem(cert).empty(); }

Certificate inject_fault(const Certificate& cert, Fault fault) {
  Certificate out = cert;
  std::visit(
      [fault](auto& c) {
        using T = std::decay_t<decltype(c)>;
        switch (fault) {
          case Fault::FlipSign: {
            auto flip = [](Interval& v) { v = Interval(-v.hi(), -v.lo()); };
            if constexpr (std::is_same_v<T, CascadeCertificate>) {
              if (!c.steps.empty()) flip(c.steps.back().value_enclosure);
            } else {
              if (!c.cells.empty()) flip(c.cells[c.cells.size() / 2].value_enclosure);
            }
            break;
          }
          case Fault::SkipDerivativeOrder: {
            if constexpr (std::is_same_v<T, CascadeCertificate>) {
              if (c.steps.size() >= 3) {
                c.steps.erase(c.steps.begin() + static_cast<std::ptrdiff_t>(c.steps.size() - 2));
              } else if (!c.steps.empty()) {
                c.steps.erase(c.steps.begin());
              }
            } else {
              if (c.cells.size() >= 2)
                c.cells.erase(c.cells.begin() + static_cast<std::ptrdiff_t>(c.cells.size() / 2));
              else
                c.cells.clear();
            }
            break;
          }
          case Fault::ShrinkInterval: {
            const Rational quarter = (c.hi - c.lo) / Rational(4);
            c.lo = c.lo + quarter;
            break;
          }
        }
      },
      out);
  return out;
}

}  // namespace tanbound::prover
