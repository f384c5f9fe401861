#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tanbound/core/interval.hpp"
#include "tanbound/core/poly.hpp"
#include "tanbound/core/rational.hpp"

namespace tanbound::prover {

enum class Direction { Positive, Negative };
enum class Conclusion { Positive, Negative, Inconclusive };

enum class Claim {
  Increasing,
  Decreasing,
  MinLocationOutside,
  MaxLocationOutside,
  PositiveAtEndpoint,
  NegativeAtEndpoint,
};

std::string_view to_string(Direction d);
std::string_view to_string(Conclusion c);
std::string_view to_string(Claim c);

/// One line of a derivative cascade. For Increasing/Decreasing the enclosure
/// is the (constant) leading coefficient of a degree-1 derivative; for the
/// vertex claims it is the vertex location and evaluation_point is the
/// interval endpoint it lies beyond; for endpoint claims it is the value of
/// the derivative at evaluation_point.
struct CascadeStep {
  int derivative_order = 0;
  Claim claim = Claim::PositiveAtEndpoint;
  Rational evaluation_point;
  Interval value_enclosure;
};

struct CascadeCertificate {
  PiPoly polynomial;
  std::string variable = "x";
  Rational lo;
  Rational hi;
  Direction direction = Direction::Positive;
  std::vector<CascadeStep> steps;
  Conclusion conclusion = Conclusion::Inconclusive;
  /// Set when no step evaluates at hi and every vertex lies left of lo: the
  /// conclusion then holds on (lo, +inf), which covers an irrational right
  /// end such as pi/2 that hi only approximates from below.
  bool extends_right = false;
  bool extends_left = false;
  std::string note;
};

struct Cell {
  Rational lo;
  Rational hi;
  Interval value_enclosure;
};

struct SubdivisionCertificate {
  PiPoly polynomial;
  std::string variable = "x";
  Rational lo;
  Rational hi;
  Direction direction = Direction::Positive;
  int max_depth = 40;
  std::vector<Cell> cells;
  Conclusion conclusion = Conclusion::Inconclusive;
  /// First cell that could not be certified, with the reason.
  std::optional<Cell> offending_cell;
  std::string note;
};

using Certificate = std::variant<CascadeCertificate, SubdivisionCertificate>;

inline constexpr int kCertificateVersion = 1;

nlohmann::json to_json(const PiPoly& p);
PiPoly poly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Certificate& cert);
/// Throws Error(Parse) on a malformed or wrong-version document.
Certificate certificate_from_json(const nlohmann::json& j);

/// Re-evaluates every enclosure from the polynomial and interval alone and
/// confirms each claim, the step structure and the conclusion.
bool check_certificate(const Certificate& cert);
/// As check_certificate, returning the first failed check (empty if none).
std::string certificate_problem(const Certificate& cert);

enum class Fault { FlipSign, SkipDerivativeOrder, ShrinkInterval };
std::string_view to_string(Fault f);

/// Copy of cert with a single injected fault, for exercising the checker.
Certificate inject_fault(const Certificate& cert, Fault fault);

}  // namespace tanbound::prover
